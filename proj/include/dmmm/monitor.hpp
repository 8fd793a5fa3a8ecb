#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dmmm/model.hpp"

namespace dmmm {

enum class UsageProfile { Flat, Bursty, Diurnal };

std::string_view to_string(UsageProfile profile);
/// "flat", "bursty", "diurnal"; throws ValidationError(InvalidArgument).
UsageProfile parse_profile(std::string_view label);

struct SynthesisParams {
  std::uint64_t seed = 1;
  int customers = 4;
  int resources = 3;
  Time horizon = 24;
  UsageProfile profile = UsageProfile::Diurnal;
};

// One record per (customer, resource, bucket), customers "c1".."cN" and
// resources "r1".."rM". Output depends only on the parameters: the generator is
// std::mt19937_64 with no std distributions, so it is identical across
// standard libraries.
//
//   flat     every amount is the same constant
//   bursty   low baseline with occasional bursts, scaled per customer
//   diurnal  24-bucket day shape, per-customer scale and per-resource phase
std::vector<UsageRecord> synthesize_usage(const SynthesisParams& params);

// Usage indexed by customer and (customer, resource). Read-only once built.
class UsageStore {
 public:
  bool empty() const noexcept { return customers_.empty(); }
  /// One past the last bucket seen in any record (0 when empty).
  Time horizon() const noexcept { return horizon_; }
  std::vector<std::string> customers() const;
  bool has_customer(std::string_view customer) const;

  // The accessors below throw ValidationError(UnknownCustomer).
  std::int64_t customer_total(std::string_view customer) const;
  /// 0 for a resource the customer never used.
  std::int64_t resource_total(std::string_view customer, std::string_view resource) const;
  const std::map<std::string, std::int64_t, IdLess>& resource_totals(std::string_view customer) const;
  /// Amount summed over resources, one entry per bucket in [0, horizon).
  std::vector<std::int64_t> bucket_totals(std::string_view customer) const;

 private:
  friend UsageStore ingest_usage(std::span<const UsageRecord> records);

  struct Customer {
    std::int64_t total = 0;
    std::map<std::string, std::int64_t, IdLess> by_resource;
    std::map<Time, std::int64_t> by_bucket;
  };
  const Customer& customer(std::string_view id) const;

  std::map<std::string, Customer, IdLess> customers_;
  Time horizon_ = 0;
};

/// Throws ValidationError on a negative amount or bucket, or a repeated
/// (customer, resource, bucket) key.
UsageStore ingest_usage(std::span<const UsageRecord> records);

/// Maximal runs of buckets whose total is >= threshold (threshold > 0).
std::vector<Window> peak_windows(const UsageStore& store, std::string_view customer, std::int64_t threshold);
/// Maximal runs of buckets whose total is <= threshold (threshold >= 0).
std::vector<Window> dormant_windows(const UsageStore& store, std::string_view customer, std::int64_t threshold);

/// Requires 0 <= dormant_threshold < peak_threshold so that no bucket is both.
UsageReport build_report(const UsageStore& store, std::int64_t peak_threshold, std::int64_t dormant_threshold);

struct UserBand {
  std::string user_type;
  std::int64_t priority = 1;
  double min_quantile = 0.0;  // lowest rank quantile in [0, 1] that reaches this band
};

// Maps usage rank to a user type. Bands must have distinct priorities, bounds
// strictly decreasing with priority, and the lowest band must start at 0 so
// every customer lands somewhere.
struct ClassificationRule {
  std::vector<UserBand> bands;

  /// benefited >= 0.75 (4), important >= 0.5 (3), casual >= 0.25 (2),
  /// lesser-privileged >= 0 (1).
  static ClassificationRule quartiles();
  /// Bands sorted by descending priority; throws ValidationError(InvalidRule).
  std::vector<UserBand> validated() const;
};

// Customers are ranked by total usage (descending, ties by id). The customer at
// rank r of n sits at quantile (n-1-r)/(n-1), or 1 when alone, and receives the
// highest band whose lower bound it reaches. Output is in customer id order.
std::vector<UserProfile> classify_users(const UsageReport& report, const ClassificationRule& rule);

}  // namespace dmmm
