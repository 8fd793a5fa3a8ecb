#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dmmm/ids.hpp"

namespace dmmm {

/// Discrete time, in abstract non-negative time units.
using Time = std::int64_t;

struct Task {
  std::string id;
  std::string user_id;
  std::int64_t execution_time = 1;

  friend bool operator==(const Task&, const Task&) = default;
};

/// A customer with a user type label and an integer priority (larger is more
/// important).
struct UserProfile {
  std::string id;
  std::string user_type;
  std::int64_t priority = 1;

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

struct Criterion {
  std::string name;
  std::int64_t weight = 1;

  friend bool operator==(const Criterion&, const Criterion&) = default;
};

/// One user-type column of a decision matrix.
struct Column {
  std::string user_type;
  std::int64_t rating = 1;

  friend bool operator==(const Column&, const Column&) = default;
};

class DecisionMatrix;
DecisionMatrix build_matrix(std::vector<Criterion> criteria, std::vector<Column> columns);

// Criteria (rows, weighted) x user types (columns, rated). Every derived field
// is computed once by build_matrix from criteria and columns; instances cannot
// be constructed any other way.
class DecisionMatrix {
 public:
  const std::vector<Criterion>& criteria() const noexcept { return criteria_; }
  const std::vector<Column>& columns() const noexcept { return columns_; }

  /// weight(criterion) * rating(column).
  std::int64_t cell(std::size_t criterion, std::size_t column) const {
    return cells_.at(criterion * columns_.size() + column);
  }
  const std::vector<std::int64_t>& column_totals() const noexcept { return totals_; }
  std::int64_t score() const noexcept { return score_; }

  friend bool operator==(const DecisionMatrix&, const DecisionMatrix&) = default;

 private:
  friend DecisionMatrix build_matrix(std::vector<Criterion>, std::vector<Column>);
  DecisionMatrix() = default;

  std::vector<Criterion> criteria_;
  std::vector<Column> columns_;
  std::vector<std::int64_t> cells_;  // row-major, criteria x columns
  std::vector<std::int64_t> totals_;
  std::int64_t score_ = 0;
};

/// Positive rational processing speed. A task of execution time e occupies a
/// resource for ceil(e / speed) time units.
struct SpeedFactor {
  std::int64_t num = 1;
  std::int64_t den = 1;

  /// Reduced form; throws ValidationError(InvalidSpeedFactor) unless num, den > 0.
  static SpeedFactor make(std::int64_t num, std::int64_t den = 1);

  Time effective_duration(std::int64_t execution_time) const;

  friend bool operator==(const SpeedFactor&, const SpeedFactor&) = default;
};

struct Resource {
  std::string id;
  DecisionMatrix matrix;
  SpeedFactor speed;

  friend bool operator==(const Resource&, const Resource&) = default;
};

struct UsageRecord {
  std::string customer_id;
  std::string resource_id;
  Time bucket_start = 0;
  std::int64_t amount = 0;

  friend bool operator==(const UsageRecord&, const UsageRecord&) = default;
};

/// Half-open interval [start, end) of usage buckets.
struct Window {
  Time start = 0;
  Time end = 0;

  friend bool operator==(const Window&, const Window&) = default;
};

struct CustomerWindow {
  std::string customer_id;
  Window window;

  friend bool operator==(const CustomerWindow&, const CustomerWindow&) = default;
};

struct UsageReport {
  Time horizon = 0;
  std::int64_t peak_threshold = 0;
  std::int64_t dormant_threshold = 0;
  std::map<std::string, std::int64_t, IdLess> customer_totals;
  // customer -> resource -> total
  std::map<std::string, std::map<std::string, std::int64_t, IdLess>, IdLess> resource_totals;
  std::vector<CustomerWindow> peak_windows;
  std::vector<CustomerWindow> dormant_windows;

  friend bool operator==(const UsageReport&, const UsageReport&) = default;
};

struct Assignment {
  std::string task_id;
  std::string resource_id;
  Time start = 0;
  Time finish = 0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Timed assignments in binding order. `resource_ids` lists every resource of
/// the scenario so idle resources still show up in the metrics.
struct Schedule {
  std::vector<Assignment> assignments;
  std::vector<std::string> resource_ids;
  Time makespan = 0;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// A scenario whose invariants have been checked. Only validate_scenario creates
// one; afterwards it is read-only.
class Scenario {
 public:
  const std::vector<UserProfile>& users() const noexcept { return users_; }
  const std::vector<Task>& tasks() const noexcept { return tasks_; }
  const std::vector<Resource>& resources() const noexcept { return resources_; }

  /// Owner of task `task_index`.
  const UserProfile& owner(std::size_t task_index) const;
  Time effective_duration(std::size_t task_index, std::size_t resource_index) const;

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.users_ == b.users_ && a.tasks_ == b.tasks_ && a.resources_ == b.resources_;
  }

 private:
  friend Scenario validate_scenario(std::vector<Task>, std::vector<UserProfile>,
                                    std::vector<Resource>);
  Scenario() = default;

  std::vector<UserProfile> users_;
  std::vector<Task> tasks_;
  std::vector<Resource> resources_;
  std::vector<std::size_t> owner_index_;
};

/// Checks every type invariant and that each task's owner exists. Throws
/// ValidationError naming the first violation found.
Scenario validate_scenario(std::vector<Task> tasks, std::vector<UserProfile> users,
                           std::vector<Resource> resources);

/// Schedule invariants against its scenario: every task assigned exactly once,
/// finish = start + effective duration, no overlap on a resource, makespan =
/// max finish. Returns a description of the first violation, or nullopt.
std::optional<std::string> check_schedule(const Scenario& scenario, const Schedule& schedule);

}  // namespace dmmm
