#include "dmmm/sim.hpp"

#include <algorithm>

#include "dmmm/errors.hpp"

namespace dmmm {

void EventQueue::push(Time finish, std::size_t resource) {
  if (resource >= queued_.size()) queued_.resize(resource + 1, false);
  if (queued_[resource]) {
    throw SchedulingError("resource index " + std::to_string(resource) + " already has a pending release");
  }
  queued_[resource] = true;
  heap_.emplace(finish, resource);
}

std::pair<Time, std::size_t> EventQueue::pop() {
  auto top = heap_.top();
  heap_.pop();
  queued_[top.second] = false;
  return top;
}

namespace {

void require_resources(const Scenario& scenario) {
  if (scenario.resources().empty()) {
    throw SchedulingError("empty resource list");
  }
}

// Applies a policy decision after checking it against the engine state.
void apply_binding(const Scenario& scenario, const Binding& b, Time clock,
                   std::vector<std::size_t>& pending, std::vector<ResourceState>& states,
                   Schedule& out) {
  auto it = std::lower_bound(pending.begin(), pending.end(), b.task);
  if (it == pending.end() || *it != b.task) {
    throw SchedulingError("policy selected task index " + std::to_string(b.task) + " which is not pending");
  }
  if (b.resource >= states.size() || states[b.resource].busy) {
    throw SchedulingError("policy selected resource index " + std::to_string(b.resource) +
                          " which is not available");
  }
  pending.erase(it);
  const Time finish = clock + scenario.effective_duration(b.task, b.resource);
  states[b.resource] = ResourceState{true, finish};
  out.assignments.push_back(
      {scenario.tasks()[b.task].id, scenario.resources()[b.resource].id, clock, finish});
  out.makespan = std::max(out.makespan, finish);
}

Schedule empty_schedule(const Scenario& scenario) {
  Schedule s;
  for (const auto& r : scenario.resources()) s.resource_ids.push_back(r.id);
  s.assignments.reserve(scenario.tasks().size());
  return s;
}

std::vector<std::size_t> all_tasks(const Scenario& scenario) {
  std::vector<std::size_t> pending(scenario.tasks().size());
  for (std::size_t i = 0; i < pending.size(); ++i) pending[i] = i;
  return pending;
}

}  // namespace

Schedule execute(const Scenario& scenario, const BindingPolicy& policy) {
  require_resources(scenario);
  Schedule out = empty_schedule(scenario);
  std::vector<std::size_t> pending = all_tasks(scenario);
  std::vector<ResourceState> states(scenario.resources().size());
  std::size_t free_count = states.size();
  EventQueue events;
  Time clock = 0;

  while (!pending.empty()) {
    while (!events.empty() && events.next_time() == clock) {
      states[events.pop().second].busy = false;
      ++free_count;
    }
    while (!pending.empty() && free_count > 0) {
      auto b = policy(DecisionView{scenario, clock, pending, states});
      if (!b) break;
      apply_binding(scenario, *b, clock, pending, states, out);
      events.push(states[b->resource].busy_until, b->resource);
      --free_count;
    }
    if (pending.empty()) break;
    if (events.empty()) {
      throw SchedulingError("policy declined every binding while no resource is running");
    }
    clock = events.next_time();
  }
  return out;
}

Schedule oracle_execute(const Scenario& scenario, const BindingPolicy& policy) {
  if (scenario.tasks().size() > kOracleMaxTasks) {
    throw ValidationError(ValidationCode::InvalidArgument,
                          "oracle_execute is limited to " + std::to_string(kOracleMaxTasks) + " tasks");
  }
  require_resources(scenario);
  Schedule out = empty_schedule(scenario);
  std::vector<std::size_t> pending = all_tasks(scenario);
  std::vector<ResourceState> states(scenario.resources().size());

  for (Time clock = 0; !pending.empty(); ++clock) {
    bool running = false;
    for (auto& s : states) {
      if (s.busy && s.busy_until == clock) s.busy = false;
    }
    for (;;) {
      bool any_free = std::any_of(states.begin(), states.end(), [](const ResourceState& s) { return !s.busy; });
      if (pending.empty() || !any_free) break;
      auto b = policy(DecisionView{scenario, clock, pending, states});
      if (!b) break;
      apply_binding(scenario, *b, clock, pending, states, out);
    }
    for (const auto& s : states) running = running || s.busy;
    if (!pending.empty() && !running) {
      throw SchedulingError("policy declined every binding while no resource is running");
    }
  }
  return out;
}

double Metrics::mean_utilization() const {
  if (utilization.empty()) return 0.0;
  Time busy = 0;
  Time span = 0;
  for (const auto& u : utilization) {
    busy += u.busy;
    span += u.span;
  }
  return span == 0 ? 0.0 : static_cast<double>(busy) / static_cast<double>(span);
}

Metrics metrics(const Schedule& schedule, std::optional<Time> horizon) {
  Metrics m;
  m.makespan = schedule.makespan;
  const Time span = horizon.value_or(schedule.makespan);
  for (const auto& id : schedule.resource_ids) m.utilization.push_back({id, 0, span});
  Time wait_sum = 0;
  for (const auto& a : schedule.assignments) {
    auto u = std::find_if(m.utilization.begin(), m.utilization.end(),
                          [&](const ResourceUtilization& r) { return r.resource_id == a.resource_id; });
    if (u == m.utilization.end()) {
      m.utilization.push_back({a.resource_id, 0, span});
      u = std::prev(m.utilization.end());
    }
    u->busy += a.finish - a.start;
    m.waits.emplace_back(a.task_id, a.start);
    wait_sum += a.start;
    m.max_wait = std::max(m.max_wait, a.start);
  }
  if (!m.waits.empty()) m.mean_wait = static_cast<double>(wait_sum) / static_cast<double>(m.waits.size());
  return m;
}

}  // namespace dmmm
