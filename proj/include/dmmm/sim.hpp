#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dmmm/model.hpp"

namespace dmmm {

struct ResourceState {
  bool busy = false;
  Time busy_until = 0;  // finish of the running task; meaningful only while busy
};

/// Everything a binding policy may look at when the engine asks for the next
/// binding.
struct DecisionView {
  const Scenario& scenario;
  Time clock;
  std::span<const std::size_t> pending;        // task indices, ascending
  std::span<const ResourceState> resources;    // indexed like scenario.resources()
};

struct Binding {
  std::size_t task;
  std::size_t resource;
};

// Returns the next (pending task, free resource) pair to bind at the current
// clock, or nullopt to wait for the next release. Must be a deterministic
// function of the view.
using BindingPolicy = std::function<std::optional<Binding>(const DecisionView&)>;

/// Pending releases ordered by (finish time, resource index).
class EventQueue {
 public:
  void push(Time finish, std::size_t resource);
  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }
  Time next_time() const { return heap_.top().first; }
  std::pair<Time, std::size_t> pop();

 private:
  using Entry = std::pair<Time, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  std::vector<bool> queued_;
};

/// Event-driven execution: the clock jumps between release times, and at each
/// decision instant the policy is asked repeatedly until it declines or no
/// resource is free. Throws SchedulingError if the policy binds a non-pending
/// task or busy resource, or waits while nothing is running.
Schedule execute(const Scenario& scenario, const BindingPolicy& policy);

inline constexpr std::size_t kOracleMaxTasks = 8;

/// Independent per-tick re-implementation of execute() for small instances
/// (at most kOracleMaxTasks tasks). Used to cross-check the engine.
Schedule oracle_execute(const Scenario& scenario, const BindingPolicy& policy);

struct ResourceUtilization {
  std::string resource_id;
  Time busy = 0;
  Time span = 0;  // denominator; 0 means the resource was never measured

  double value() const { return span == 0 ? 0.0 : static_cast<double>(busy) / static_cast<double>(span); }
};

struct Metrics {
  Time makespan = 0;
  std::vector<ResourceUtilization> utilization;
  std::vector<std::pair<std::string, Time>> waits;  // task id -> start
  double mean_wait = 0.0;
  Time max_wait = 0;

  double mean_utilization() const;
};

/// Utilization is busy time over `horizon` (defaults to the makespan); wait is
/// the start time since every task arrives at 0.
Metrics metrics(const Schedule& schedule, std::optional<Time> horizon = std::nullopt);

}  // namespace dmmm
