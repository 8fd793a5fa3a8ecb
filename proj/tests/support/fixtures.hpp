#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dmmm/decision.hpp"
#include "dmmm/model.hpp"

namespace dmmm::testing {

inline std::vector<Criterion> demo_criteria() { return {{"C1", 1}, {"C2", 2}, {"C3", 3}}; }

inline std::vector<UserProfile> demo_users() {
  return {{"u1", "benefited", 4}, {"u2", "important", 3}, {"u3", "casual", 2}, {"u4", "lesser-privileged", 1}};
}

inline std::vector<Task> demo_tasks() {
  return {{"t1", "u1", 15}, {"t2", "u2", 20}, {"t3", "u3", 10}, {"t4", "u4", 5}};
}

// r1 carries the four-type priority matrix (score 24); r2 and r3 score 12 and 6.
inline Scenario demo_scenario() {
  const auto users = demo_users();
  std::vector<Resource> resources{
      {"r1", matrix_from_priorities(demo_criteria(), users), {}},
      {"r2", build_matrix(demo_criteria(), {{"casual", 2}, {"lesser-privileged", 1}}), {}},
      {"r3", build_matrix(demo_criteria(), {{"lesser-privileged", 1}}), {}},
  };
  return validate_scenario(demo_tasks(), users, resources);
}

/// Demo tasks on `m` resources that all carry the same matrix.
inline Scenario demo_identical(int m = 3) {
  const auto users = demo_users();
  std::vector<Resource> resources;
  for (int r = 1; r <= m; ++r) {
    resources.push_back({"r" + std::to_string(r), matrix_from_priorities(demo_criteria(), users), {}});
  }
  return validate_scenario(demo_tasks(), users, resources);
}

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline DecisionMatrix random_matrix(std::mt19937_64& rng, int max_dim = 5, std::int64_t max_value = 9) {
  std::vector<Criterion> criteria;
  const auto rows = uniform(rng, 1, max_dim);
  for (std::int64_t c = 0; c < rows; ++c) criteria.push_back({"c" + std::to_string(c), uniform(rng, 1, max_value)});
  std::vector<Column> columns;
  const auto cols = uniform(rng, 1, max_dim);
  for (std::int64_t u = 0; u < cols; ++u) columns.push_back({"type" + std::to_string(u), uniform(rng, 1, max_value)});
  return build_matrix(std::move(criteria), std::move(columns));
}

struct RandomScenarioShape {
  int max_tasks = 5;
  int max_resources = 3;
  std::int64_t max_duration = 6;
  bool vary_speed = true;
  bool identical_matrices = false;
  int min_tasks = 0;
};

inline Scenario random_scenario(std::uint64_t seed, const RandomScenarioShape& shape = {}) {
  std::mt19937_64 rng(seed);
  std::vector<UserProfile> users;
  const auto n_users = uniform(rng, 1, 3);
  for (std::int64_t u = 1; u <= n_users; ++u) {
    users.push_back({"u" + std::to_string(u), "type" + std::to_string(u), uniform(rng, 1, 4)});
  }
  std::vector<Task> tasks;
  const auto n_tasks = uniform(rng, shape.min_tasks, shape.max_tasks);
  for (std::int64_t t = 1; t <= n_tasks; ++t) {
    tasks.push_back({"t" + std::to_string(t), users[static_cast<std::size_t>(uniform(rng, 0, n_users - 1))].id,
                     uniform(rng, 1, shape.max_duration)});
  }
  std::vector<Resource> resources;
  const auto n_res = uniform(rng, 1, shape.max_resources);
  const DecisionMatrix shared = random_matrix(rng, 3, 4);
  const SpeedFactor speeds[] = {{1, 1}, {2, 1}, {3, 2}, {1, 2}};
  for (std::int64_t r = 1; r <= n_res; ++r) {
    SpeedFactor speed{};
    if (shape.vary_speed) speed = speeds[uniform(rng, 0, 3)];
    resources.push_back({"r" + std::to_string(r), shape.identical_matrices ? shared : random_matrix(rng, 3, 4), speed});
  }
  return validate_scenario(std::move(tasks), std::move(users), std::move(resources));
}

}  // namespace dmmm::testing
