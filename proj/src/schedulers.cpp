#include "dmmm/schedulers.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <numeric>
#include <tuple>

#include "dmmm/errors.hpp"

namespace dmmm {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Dmmm: return "dmmm";
    case Algorithm::MinMin: return "min-min";
    case Algorithm::MaxMin: return "max-min";
    case Algorithm::RoundRobin: return "round-robin";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view label) {
  for (auto a : all_algorithms()) {
    if (to_string(a) == label) return a;
  }
  throw ValidationError(ValidationCode::UnknownAlgorithm,
                        "'" + std::string(label) + "' (expected dmmm, min-min, max-min or round-robin)");
}

std::vector<Algorithm> all_algorithms() {
  return {Algorithm::Dmmm, Algorithm::MinMin, Algorithm::MaxMin, Algorithm::RoundRobin};
}

namespace {

// Positions of items in natural id order.
template <typename T>
std::vector<std::size_t> id_ranks(const std::vector<T>& items) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return compare_ids(items[a].id, items[b].id) < 0; });
  std::vector<std::size_t> rank(items.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos;
  return rank;
}

struct Prepared {
  std::vector<std::size_t> task_rank;
  std::vector<std::size_t> resource_rank;
  std::vector<std::int64_t> priority;
};

Prepared prepare(const Scenario& scenario) {
  Prepared p;
  p.task_rank = id_ranks(scenario.tasks());
  p.resource_rank = id_ranks(scenario.resources());
  p.priority.reserve(scenario.tasks().size());
  for (std::size_t i = 0; i < scenario.tasks().size(); ++i) p.priority.push_back(scenario.owner(i).priority);
  return p;
}

// Pending task minimizing (priority desc if priority_first, duration in the
// requested direction, id).
std::size_t select_task(const Scenario& scenario, const Prepared& p, std::span<const std::size_t> pending,
                        bool priority_first, bool longest) {
  auto key = [&](std::size_t t) {
    const std::int64_t d = scenario.tasks()[t].execution_time;
    return std::make_tuple(priority_first ? -p.priority[t] : 0, longest ? -d : d, p.task_rank[t]);
  };
  std::size_t best = pending.front();
  auto best_key = key(best);
  for (std::size_t t : pending.subspan(1)) {
    auto k = key(t);
    if (k < best_key) {
      best = t;
      best_key = k;
    }
  }
  return best;
}

BindingPolicy dmmm_policy(const Scenario& scenario, const SchedulerConfig& config) {
  auto p = std::make_shared<Prepared>(prepare(scenario));
  // resources by descending score, then id
  auto order = std::make_shared<std::vector<std::size_t>>(scenario.resources().size());
  std::iota(order->begin(), order->end(), 0);
  std::sort(order->begin(), order->end(), [&](std::size_t a, std::size_t b) {
    const auto sa = scenario.resources()[a].matrix.score();
    const auto sb = scenario.resources()[b].matrix.score();
    if (sa != sb) return sa > sb;
    return p->resource_rank[a] < p->resource_rank[b];
  });
  const bool pf = config.priority_first;
  return [p, order, pf](const DecisionView& view) -> std::optional<Binding> {
    auto free = std::find_if(order->begin(), order->end(),
                             [&](std::size_t r) { return !view.resources[r].busy; });
    if (free == order->end() || view.pending.empty()) return std::nullopt;
    return Binding{select_task(view.scenario, *p, view.pending, pf, false), *free};
  };
}

BindingPolicy completion_time_policy(const Scenario& scenario, const SchedulerConfig& config, bool longest) {
  auto p = std::make_shared<Prepared>(prepare(scenario));
  const bool pf = config.priority_first;
  return [p, pf, longest](const DecisionView& view) -> std::optional<Binding> {
    if (view.pending.empty()) return std::nullopt;
    const std::size_t task = select_task(view.scenario, *p, view.pending, pf, longest);
    std::size_t best = 0;
    Time best_completion = std::numeric_limits<Time>::max();
    for (std::size_t r = 0; r < view.resources.size(); ++r) {
      const auto& s = view.resources[r];
      const Time ready = s.busy ? std::max(s.busy_until, view.clock) : view.clock;
      const Time completion = ready + view.scenario.effective_duration(task, r);
      if (completion < best_completion ||
          (completion == best_completion && p->resource_rank[r] < p->resource_rank[best])) {
        best = r;
        best_completion = completion;
      }
    }
    // The best resource is still busy: wait for it, as list scheduling would.
    if (view.resources[best].busy) return std::nullopt;
    return Binding{task, best};
  };
}

BindingPolicy round_robin_policy(const Scenario& scenario, const SchedulerConfig& config) {
  const Prepared p = prepare(scenario);
  const std::size_t n = scenario.tasks().size();
  const std::size_t m = scenario.resources().size();
  if (m == 0) throw SchedulingError("empty resource list");

  std::vector<std::size_t> deal(n);
  std::iota(deal.begin(), deal.end(), 0);
  std::sort(deal.begin(), deal.end(), [&](std::size_t a, std::size_t b) {
    if (config.priority_first && p.priority[a] != p.priority[b]) return p.priority[a] > p.priority[b];
    return p.task_rank[a] < p.task_rank[b];
  });
  std::vector<std::size_t> resources_by_id(m);
  for (std::size_t r = 0; r < m; ++r) resources_by_id[p.resource_rank[r]] = r;

  struct Plan {
    std::vector<std::size_t> position;  // task -> dealing position
    std::vector<std::size_t> home;      // task -> resource
    std::vector<std::int64_t> priority;
    std::size_t resources;
  };
  auto plan = std::make_shared<Plan>();
  plan->position.resize(n);
  plan->home.resize(n);
  plan->priority = p.priority;
  plan->resources = m;
  for (std::size_t pos = 0; pos < n; ++pos) {
    plan->position[deal[pos]] = pos;
    plan->home[deal[pos]] = resources_by_id[pos % m];
  }

  const bool pf = config.priority_first;
  return [plan, pf](const DecisionView& view) -> std::optional<Binding> {
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> head(plan->resources, none);
    std::int64_t top_priority = std::numeric_limits<std::int64_t>::min();
    for (std::size_t t : view.pending) {
      auto& h = head[plan->home[t]];
      if (h == none || plan->position[t] < plan->position[h]) h = t;
      top_priority = std::max(top_priority, plan->priority[t]);
    }
    std::optional<Binding> pick;
    for (std::size_t r = 0; r < plan->resources; ++r) {
      const std::size_t t = head[r];
      if (t == none || view.resources[r].busy) continue;
      if (pf && plan->priority[t] != top_priority) continue;
      if (!pick || plan->position[t] < plan->position[pick->task]) pick = Binding{t, r};
    }
    return pick;
  };
}

}  // namespace

BindingPolicy make_policy(const Scenario& scenario, const SchedulerConfig& config) {
  switch (config.algorithm) {
    case Algorithm::Dmmm: return dmmm_policy(scenario, config);
    case Algorithm::MinMin: return completion_time_policy(scenario, config, false);
    case Algorithm::MaxMin: return completion_time_policy(scenario, config, true);
    case Algorithm::RoundRobin: return round_robin_policy(scenario, config);
  }
  throw ValidationError(ValidationCode::UnknownAlgorithm, "unhandled algorithm");
}

Schedule run_scheduler(const Scenario& scenario, const SchedulerConfig& config) {
  if (scenario.resources().empty()) throw SchedulingError("empty resource list");
  return execute(scenario, make_policy(scenario, config));
}

namespace {

Schedule run_as(const Scenario& scenario, SchedulerConfig config, Algorithm algorithm) {
  config.algorithm = algorithm;
  return run_scheduler(scenario, config);
}

}  // namespace

Schedule dmmm_schedule(const Scenario& scenario, const SchedulerConfig& config) {
  return run_as(scenario, config, Algorithm::Dmmm);
}

Schedule min_min_schedule(const Scenario& scenario, const SchedulerConfig& config) {
  return run_as(scenario, config, Algorithm::MinMin);
}

Schedule max_min_schedule(const Scenario& scenario, const SchedulerConfig& config) {
  return run_as(scenario, config, Algorithm::MaxMin);
}

Schedule round_robin_schedule(const Scenario& scenario, const SchedulerConfig& config) {
  return run_as(scenario, config, Algorithm::RoundRobin);
}

std::vector<ComparisonRow> compare(const Scenario& scenario, std::span<const Algorithm> algorithms,
                                   bool priority_first) {
  std::vector<ComparisonRow> rows;
  rows.reserve(algorithms.size());
  for (auto a : algorithms) {
    const auto m = metrics(run_scheduler(scenario, SchedulerConfig{a, priority_first}));
    rows.push_back({a, m.makespan, m.mean_wait, m.max_wait, m.mean_utilization()});
  }
  return rows;
}

}  // namespace dmmm
