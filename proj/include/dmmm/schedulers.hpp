#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dmmm/model.hpp"
#include "dmmm/sim.hpp"

namespace dmmm {

enum class Algorithm { Dmmm, MinMin, MaxMin, RoundRobin };

/// "dmmm", "min-min", "max-min", "round-robin".
std::string_view to_string(Algorithm algorithm);
/// Throws ValidationError(UnknownAlgorithm).
Algorithm parse_algorithm(std::string_view label);
std::vector<Algorithm> all_algorithms();

// Tie rule (fixed for every algorithm): whenever keys are equal, the task or
// resource with the smaller id in natural id order wins.
struct SchedulerConfig {
  Algorithm algorithm = Algorithm::Dmmm;
  // Serve the highest owner priority first: no task is bound while a task of a
  // strictly higher priority is pending.
  bool priority_first = false;

  friend bool operator==(const SchedulerConfig&, const SchedulerConfig&) = default;
};

/// The policy an algorithm uses when driven by execute()/oracle_execute().
///
///  dmmm:        free resource with the highest matrix score, shortest task.
///  min-min:     shortest task onto the resource with the earliest
///               completion-if-assigned (waiting if that resource is busy).
///  max-min:     as min-min with the longest task.
///  round-robin: tasks dealt in id order to resources in id order; each
///               resource serves its own queue in that order.
BindingPolicy make_policy(const Scenario& scenario, const SchedulerConfig& config);

Schedule dmmm_schedule(const Scenario& scenario, const SchedulerConfig& config = {});
Schedule min_min_schedule(const Scenario& scenario, const SchedulerConfig& config = {});
Schedule max_min_schedule(const Scenario& scenario, const SchedulerConfig& config = {});
Schedule round_robin_schedule(const Scenario& scenario, const SchedulerConfig& config = {});

/// Dispatches on config.algorithm.
Schedule run_scheduler(const Scenario& scenario, const SchedulerConfig& config);

struct ComparisonRow {
  Algorithm algorithm;
  Time makespan = 0;
  double mean_wait = 0.0;
  Time max_wait = 0;
  double mean_utilization = 0.0;
};

/// One row per algorithm, in the order given.
std::vector<ComparisonRow> compare(const Scenario& scenario, std::span<const Algorithm> algorithms,
                                   bool priority_first = false);

}  // namespace dmmm
