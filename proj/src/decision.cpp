#include "dmmm/decision.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "dmmm/errors.hpp"

namespace dmmm {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw ValidationError(ValidationCode::Overflow, "matrix cell");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw ValidationError(ValidationCode::Overflow, "column total");
  return out;
}

}  // namespace

DecisionMatrix build_matrix(std::vector<Criterion> criteria, std::vector<Column> columns) {
  if (criteria.empty()) throw ValidationError(ValidationCode::EmptyCriteria, "matrix needs at least one criterion");
  if (columns.empty()) throw ValidationError(ValidationCode::EmptyColumns, "matrix needs at least one column");
  for (const auto& c : criteria) {
    if (c.weight < 1) {
      throw ValidationError(ValidationCode::NonPositiveWeight,
                            "criterion '" + c.name + "' has weight " + std::to_string(c.weight));
    }
  }
  std::set<std::string_view> labels;
  for (const auto& col : columns) {
    if (col.user_type.empty()) throw ValidationError(ValidationCode::EmptyUserType, "matrix column");
    if (col.rating < 1) {
      throw ValidationError(ValidationCode::NonPositiveRating,
                            "column '" + col.user_type + "' has rating " + std::to_string(col.rating));
    }
    if (!labels.insert(col.user_type).second) {
      throw ValidationError(ValidationCode::DuplicateId, "matrix column '" + col.user_type + "' declared twice");
    }
  }

  DecisionMatrix m;
  m.cells_.reserve(criteria.size() * columns.size());
  m.totals_.assign(columns.size(), 0);
  for (const auto& c : criteria) {
    for (std::size_t u = 0; u < columns.size(); ++u) {
      const std::int64_t cell = checked_mul(c.weight, columns[u].rating);
      m.cells_.push_back(cell);
      m.totals_[u] = checked_add(m.totals_[u], cell);
    }
  }
  m.score_ = *std::max_element(m.totals_.begin(), m.totals_.end());
  m.criteria_ = std::move(criteria);
  m.columns_ = std::move(columns);
  return m;
}

DecisionMatrix matrix_from_priorities(std::vector<Criterion> criteria,
                                      std::span<const UserProfile> users) {
  std::vector<Column> columns;
  for (const auto& u : users) {
    auto same = std::find_if(columns.begin(), columns.end(),
                             [&](const Column& c) { return c.user_type == u.user_type; });
    if (same == columns.end()) {
      columns.push_back({u.user_type, u.priority});
    } else if (same->rating != u.priority) {
      throw ValidationError(ValidationCode::InvalidArgument,
                            "user type '" + u.user_type + "' appears with two priorities");
    }
  }
  std::stable_sort(columns.begin(), columns.end(),
                   [](const Column& a, const Column& b) { return a.rating > b.rating; });
  return build_matrix(std::move(criteria), std::move(columns));
}

std::int64_t column_total(const DecisionMatrix& matrix, std::string_view user_type) {
  const auto& cols = matrix.columns();
  for (std::size_t u = 0; u < cols.size(); ++u) {
    if (cols[u].user_type == user_type) return matrix.column_totals()[u];
  }
  throw ValidationError(ValidationCode::UnknownUserType, std::string(user_type));
}

std::int64_t matrix_score(const DecisionMatrix& matrix) { return matrix.score(); }

const std::string& best_user_type(const DecisionMatrix& matrix) {
  const auto& cols = matrix.columns();
  const auto& totals = matrix.column_totals();
  std::size_t best = 0;
  for (std::size_t u = 1; u < cols.size(); ++u) {
    if (totals[u] > totals[best] || (totals[u] == totals[best] && cols[u].rating > cols[best].rating)) {
      best = u;
    }
  }
  return cols[best].user_type;
}

std::vector<std::string> rank_resources(std::span<const Resource> resources) {
  if (resources.empty()) throw ValidationError(ValidationCode::InvalidArgument, "no resources to rank");
  std::vector<const Resource*> order;
  order.reserve(resources.size());
  for (const auto& r : resources) order.push_back(&r);
  std::sort(order.begin(), order.end(), [](const Resource* a, const Resource* b) {
    if (a->matrix.score() != b->matrix.score()) return a->matrix.score() > b->matrix.score();
    return compare_ids(a->id, b->id) < 0;
  });
  std::vector<std::string> ids;
  ids.reserve(order.size());
  for (const auto* r : order) ids.push_back(r->id);
  return ids;
}

}  // namespace dmmm
