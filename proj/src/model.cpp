#include "dmmm/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "dmmm/errors.hpp"

namespace dmmm {

const char* to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::DuplicateId: return "duplicate id";
    case ValidationCode::DanglingUserReference: return "dangling user reference";
    case ValidationCode::NonPositiveDuration: return "non-positive duration";
    case ValidationCode::NonPositiveWeight: return "non-positive weight";
    case ValidationCode::NonPositivePriority: return "non-positive priority";
    case ValidationCode::NonPositiveRating: return "non-positive rating";
    case ValidationCode::EmptyUserType: return "empty user type";
    case ValidationCode::EmptyCriteria: return "empty criteria";
    case ValidationCode::EmptyColumns: return "empty columns";
    case ValidationCode::InvalidSpeedFactor: return "invalid speed factor";
    case ValidationCode::UnknownUserType: return "unknown user type";
    case ValidationCode::UnknownKey: return "unknown key";
    case ValidationCode::MissingField: return "missing field";
    case ValidationCode::WrongType: return "wrong type";
    case ValidationCode::UnknownAlgorithm: return "unknown algorithm";
    case ValidationCode::NegativeAmount: return "negative amount";
    case ValidationCode::NegativeBucket: return "negative bucket";
    case ValidationCode::DuplicateUsageKey: return "duplicate usage key";
    case ValidationCode::UnknownCustomer: return "unknown customer";
    case ValidationCode::ThresholdOrder: return "threshold ordering";
    case ValidationCode::InvalidThreshold: return "invalid threshold";
    case ValidationCode::InvalidRule: return "invalid classification rule";
    case ValidationCode::InvalidArgument: return "invalid argument";
    case ValidationCode::Overflow: return "arithmetic overflow";
  }
  return "validation error";
}

SpeedFactor SpeedFactor::make(std::int64_t num, std::int64_t den) {
  if (num <= 0 || den <= 0) {
    throw ValidationError(ValidationCode::InvalidSpeedFactor,
                          std::to_string(num) + "/" + std::to_string(den) + " is not positive");
  }
  const std::int64_t g = std::gcd(num, den);
  return SpeedFactor{num / g, den / g};
}

Time SpeedFactor::effective_duration(std::int64_t execution_time) const {
  // ceil(e / (num/den)) = ceil(e * den / num)
  std::int64_t scaled = 0;
  if (__builtin_mul_overflow(execution_time, den, &scaled)) {
    throw ValidationError(ValidationCode::Overflow, "effective duration");
  }
  return (scaled + num - 1) / num;
}

const UserProfile& Scenario::owner(std::size_t task_index) const {
  return users_.at(owner_index_.at(task_index));
}

Time Scenario::effective_duration(std::size_t task_index, std::size_t resource_index) const {
  return resources_.at(resource_index).speed.effective_duration(tasks_.at(task_index).execution_time);
}

namespace {

template <typename T>
void require_unique_ids(const std::vector<T>& items, const char* kind) {
  std::set<std::string_view> seen;
  for (const auto& item : items) {
    if (!seen.insert(item.id).second) {
      throw ValidationError(ValidationCode::DuplicateId,
                            std::string(kind) + " '" + item.id + "' declared twice");
    }
  }
}

}  // namespace

Scenario validate_scenario(std::vector<Task> tasks, std::vector<UserProfile> users,
                           std::vector<Resource> resources) {
  require_unique_ids(users, "user");
  require_unique_ids(tasks, "task");
  require_unique_ids(resources, "resource");

  std::unordered_map<std::string_view, std::size_t> user_index;
  for (std::size_t i = 0; i < users.size(); ++i) {
    const auto& u = users[i];
    if (u.user_type.empty()) {
      throw ValidationError(ValidationCode::EmptyUserType, "user '" + u.id + "'");
    }
    if (u.priority < 1) {
      throw ValidationError(ValidationCode::NonPositivePriority,
                            "user '" + u.id + "' has priority " + std::to_string(u.priority));
    }
    user_index.emplace(u.id, i);
  }

  std::vector<std::size_t> owners;
  owners.reserve(tasks.size());
  for (const auto& t : tasks) {
    if (t.execution_time < 1) {
      throw ValidationError(ValidationCode::NonPositiveDuration,
                            "task '" + t.id + "' has execution_time " +
                                std::to_string(t.execution_time));
    }
    auto it = user_index.find(t.user_id);
    if (it == user_index.end()) {
      throw ValidationError(ValidationCode::DanglingUserReference,
                            "task '" + t.id + "' references unknown user '" + t.user_id + "'");
    }
    owners.push_back(it->second);
  }

  // Matrices are validated by build_matrix; re-run it so a hand-assembled
  // Resource cannot smuggle in inconsistent derived fields.
  for (auto& r : resources) {
    SpeedFactor::make(r.speed.num, r.speed.den);
    r.matrix = build_matrix(r.matrix.criteria(), r.matrix.columns());
  }

  Scenario s;
  s.users_ = std::move(users);
  s.tasks_ = std::move(tasks);
  s.resources_ = std::move(resources);
  s.owner_index_ = std::move(owners);
  return s;
}

std::optional<std::string> check_schedule(const Scenario& scenario, const Schedule& schedule) {
  std::unordered_map<std::string_view, std::size_t> task_index;
  for (std::size_t i = 0; i < scenario.tasks().size(); ++i) task_index.emplace(scenario.tasks()[i].id, i);
  std::unordered_map<std::string_view, std::size_t> resource_index;
  for (std::size_t i = 0; i < scenario.resources().size(); ++i) {
    resource_index.emplace(scenario.resources()[i].id, i);
  }

  std::vector<int> seen(scenario.tasks().size(), 0);
  std::vector<std::vector<std::pair<Time, Time>>> busy(scenario.resources().size());
  Time makespan = 0;
  for (const auto& a : schedule.assignments) {
    auto t = task_index.find(a.task_id);
    if (t == task_index.end()) return "unknown task '" + a.task_id + "'";
    auto r = resource_index.find(a.resource_id);
    if (r == resource_index.end()) return "unknown resource '" + a.resource_id + "'";
    if (++seen[t->second] > 1) return "task '" + a.task_id + "' assigned more than once";
    if (a.start < 0) return "task '" + a.task_id + "' starts before 0";
    if (a.finish != a.start + scenario.effective_duration(t->second, r->second)) {
      return "task '" + a.task_id + "' finish does not match its effective duration";
    }
    busy[r->second].emplace_back(a.start, a.finish);
    makespan = std::max(makespan, a.finish);
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] == 0) return "task '" + scenario.tasks()[i].id + "' never assigned";
  }
  for (std::size_t r = 0; r < busy.size(); ++r) {
    auto& spans = busy[r];
    std::sort(spans.begin(), spans.end());
    for (std::size_t k = 1; k < spans.size(); ++k) {
      if (spans[k].first < spans[k - 1].second) {
        return "overlapping assignments on resource '" + scenario.resources()[r].id + "'";
      }
    }
  }
  if (makespan != schedule.makespan) return "makespan is not the latest finish";
  return std::nullopt;
}

}  // namespace dmmm
