#pragma once

#include <string>
#include <string_view>

namespace dmmm {

// Identifiers are compared in "natural" order: runs of decimal digits compare
// by numeric value, so "t2" < "t10". Strings that are numerically equal but
// spelled differently ("t01" vs "t1") fall back to plain byte order, which
// keeps the relation a strict total order.
int compare_ids(std::string_view a, std::string_view b) noexcept;

struct IdLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const noexcept {
    return compare_ids(a, b) < 0;
  }
};

}  // namespace dmmm
