#include "doctest.h"

#include <algorithm>
#include <map>

#include "dmmm/decision.hpp"
#include "dmmm/errors.hpp"
#include "dmmm/schedulers.hpp"
#include "support/fixtures.hpp"
#include "support/reference.hpp"

using namespace dmmm;
using namespace dmmm::testing;

namespace {

using Row = std::tuple<std::string, std::string, Time, Time>;

std::vector<Row> rows(const Schedule& s) {
  std::vector<Row> out;
  for (const auto& a : s.assignments) out.emplace_back(a.task_id, a.resource_id, a.start, a.finish);
  return out;
}

std::vector<std::string> task_sequence(const Schedule& s) {
  std::vector<std::string> out;
  for (const auto& a : s.assignments) out.push_back(a.task_id);
  return out;
}

Scenario uniform_scenario(std::vector<std::int64_t> durations, int resources) {
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < durations.size(); ++i) tasks.push_back({"t" + std::to_string(i + 1), "u1", durations[i]});
  std::vector<Resource> rs;
  for (int r = 1; r <= resources; ++r) rs.push_back({"r" + std::to_string(r), build_matrix({{"c", 1}}, {{"x", 1}}), {}});
  return validate_scenario(tasks, {{"u1", "x", 1}}, rs);
}

}  // namespace

TEST_CASE("algorithm labels") {
  for (auto a : all_algorithms()) CHECK(parse_algorithm(to_string(a)) == a);
  CHECK_THROWS_AS(parse_algorithm("bogus"), ValidationError);
  CHECK_THROWS_AS(parse_algorithm("genetic"), ValidationError);
}

TEST_CASE("dmmm on the four-user demo") {
  const auto s = dmmm_schedule(demo_scenario());
  REQUIRE(!s.assignments.empty());
  CHECK(rows(s).front() == Row{"t4", "r1", 0, 5});
  CHECK(rows(s) == std::vector<Row>{{"t4", "r1", 0, 5}, {"t3", "r2", 0, 10}, {"t1", "r3", 0, 15}, {"t2", "r1", 5, 25}});
  CHECK(s.makespan == 25);
}

TEST_CASE("dmmm single task") {
  const auto s = dmmm_schedule(uniform_scenario({7}, 1));
  CHECK(rows(s) == std::vector<Row>{{"t1", "r1", 0, 7}});
  CHECK(s.makespan == 7);
}

TEST_CASE("dmmm follows the scores, not the ids") {
  // same four-user demo but the 24-point matrix now lives on r3
  const auto base = demo_scenario();
  std::vector<Resource> rs = base.resources();
  std::swap(rs[0].matrix, rs[2].matrix);
  const auto swapped = validate_scenario(base.tasks(), base.users(), rs);
  const auto s = dmmm_schedule(swapped);
  CHECK(rows(s).front() == Row{"t4", "r3", 0, 5});
  CHECK(rows(s)[1] == Row{"t3", "r2", 0, 10});
  CHECK(rows(s)[2] == Row{"t1", "r1", 0, 15});
}

TEST_CASE("min-min") {
  CHECK(min_min_schedule(uniform_scenario({5, 10}, 2)).makespan == 10);
  const auto parallel = min_min_schedule(uniform_scenario({5, 10}, 2));
  CHECK(parallel.assignments[0].start == 0);
  CHECK(parallel.assignments[1].start == 0);

  const auto worked = min_min_schedule(demo_identical());
  CHECK(task_sequence(worked) == std::vector<std::string>{"t4", "t3", "t1", "t2"});
  CHECK(worked.makespan == 25);

  const auto serial = min_min_schedule(uniform_scenario({3, 1, 2}, 1));
  CHECK(task_sequence(serial) == std::vector<std::string>{"t2", "t3", "t1"});
  CHECK(serial.makespan == 6);
}

TEST_CASE("min-min waits for a faster resource") {
  // r2 is 4x faster: after t1 takes it, t2 (8) still finishes sooner by
  // waiting for r2 (2 + 2 = 4) than starting on r1 now (8).
  const auto s = validate_scenario({{"t1", "u", 8}, {"t2", "u", 8}}, {{"u", "x", 1}},
                                   {{"r1", build_matrix({{"c", 1}}, {{"x", 1}}), {}},
                                    {"r2", build_matrix({{"c", 1}}, {{"x", 1}}), SpeedFactor::make(4)}});
  const auto out = min_min_schedule(s);
  CHECK(rows(out) == std::vector<Row>{{"t1", "r2", 0, 2}, {"t2", "r2", 2, 4}});
  // dmmm never waits
  const auto greedy = dmmm_schedule(s);
  CHECK(greedy.assignments[1].start == 0);
}

TEST_CASE("max-min") {
  const auto serial = max_min_schedule(uniform_scenario({3, 1, 2}, 1));
  CHECK(task_sequence(serial) == std::vector<std::string>{"t1", "t3", "t2"});
  CHECK(serial.makespan == 6);

  const auto worked = max_min_schedule(demo_identical());
  CHECK(task_sequence(worked).at(0) == "t2");
  CHECK(task_sequence(worked).at(1) == "t1");
  CHECK(rows(worked) == std::vector<Row>{{"t2", "r1", 0, 20}, {"t1", "r2", 0, 15}, {"t3", "r3", 0, 10}, {"t4", "r3", 10, 15}});

  const auto single = uniform_scenario({4}, 2);
  CHECK(max_min_schedule(single) == min_min_schedule(single));
}

TEST_CASE("round-robin") {
  const auto three = round_robin_schedule(uniform_scenario({4, 2, 7}, 3));
  CHECK(std::all_of(three.assignments.begin(), three.assignments.end(), [](const auto& a) { return a.start == 0; }));

  const auto dealt = round_robin_schedule(uniform_scenario({1, 1, 1, 1}, 2));
  std::map<std::string, std::vector<std::string>> per_resource;
  for (const auto& a : dealt.assignments) per_resource[a.resource_id].push_back(a.task_id);
  CHECK(per_resource["r1"] == std::vector<std::string>{"t1", "t3"});
  CHECK(per_resource["r2"] == std::vector<std::string>{"t2", "t4"});

  const auto worked = round_robin_schedule(demo_scenario());
  CHECK(worked.makespan == 20);
  CHECK(rows(worked).back() == Row{"t4", "r1", 15, 20});
}

TEST_CASE("round-robin deals in natural id order") {
  std::vector<Task> tasks;
  for (int i = 12; i >= 1; --i) tasks.push_back({"t" + std::to_string(i), "u1", 1});
  const auto s = validate_scenario(tasks, {{"u1", "x", 1}},
                                   {{"r1", build_matrix({{"c", 1}}, {{"x", 1}}), {}},
                                    {"r10", build_matrix({{"c", 1}}, {{"x", 1}}), {}},
                                    {"r2", build_matrix({{"c", 1}}, {{"x", 1}}), {}}});
  const auto out = round_robin_schedule(s);
  // t1 -> r1, t2 -> r2, t3 -> r10, t4 -> r1, ...
  std::map<std::string, std::string> where;
  for (const auto& a : out.assignments) where[a.task_id] = a.resource_id;
  CHECK(where["t1"] == "r1");
  CHECK(where["t2"] == "r2");
  CHECK(where["t3"] == "r10");
  CHECK(where["t10"] == "r1");
  CHECK(where["t12"] == "r10");
}

TEST_CASE("priority_first serves higher priorities first") {
  const auto base = demo_scenario();
  const auto out = dmmm_schedule(base, {Algorithm::Dmmm, true});
  // u1 (4) owns t1, u2 (3) t2, u3 (2) t3, u4 (1) t4
  CHECK(task_sequence(out) == std::vector<std::string>{"t1", "t2", "t3", "t4"});
  CHECK(rows(out).front() == Row{"t1", "r1", 0, 15});
}

TEST_CASE("schedulers need a resource") {
  const auto s = validate_scenario({}, {}, {});
  for (auto a : all_algorithms()) CHECK_THROWS_AS(run_scheduler(s, {a, false}), SchedulingError);
}

TEST_CASE("engine output equals the independent list-scheduling references") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Scenario s = random_scenario(seed, {.max_tasks = 9, .max_resources = 4});
    for (bool pf : {false, true}) {
      CHECK(dmmm_schedule(s, {Algorithm::Dmmm, pf}) == reference_dmmm(s, pf));
      CHECK(min_min_schedule(s, {Algorithm::MinMin, pf}) == reference_completion_time(s, false, pf));
      CHECK(max_min_schedule(s, {Algorithm::MaxMin, pf}) == reference_completion_time(s, true, pf));
    }
    CHECK(round_robin_schedule(s) == reference_round_robin(s));
  }
}

TEST_CASE("schedules are valid and deterministic") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Scenario s = random_scenario(seed, {.max_tasks = 15, .max_resources = 5, .max_duration = 20});
    for (auto a : all_algorithms()) {
      for (bool pf : {false, true}) {
        const auto first = run_scheduler(s, {a, pf});
        CHECK_FALSE(check_schedule(s, first).has_value());
        CHECK(run_scheduler(s, {a, pf}) == first);
      }
    }
  }
}

TEST_CASE("permuting resource ids permutes dmmm's choices") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Scenario s = random_scenario(seed, {.max_tasks = 8, .max_resources = 4, .vary_speed = false});
    // distinct scores so ids never break ties
    std::vector<Resource> rs = s.resources();
    for (std::size_t i = 0; i < rs.size(); ++i) {
      rs[i].matrix = build_matrix({{"c", static_cast<std::int64_t>(10 * (i + 1))}}, {{"x", 1}});
    }
    const auto original = validate_scenario(s.tasks(), s.users(), rs);
    auto renamed_rs = rs;
    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      renamed_rs[i].id = "q" + std::to_string(rs.size() - i);
      rename[rs[i].id] = renamed_rs[i].id;
    }
    const auto renamed = validate_scenario(s.tasks(), s.users(), renamed_rs);
    auto a = dmmm_schedule(original);
    const auto b = dmmm_schedule(renamed);
    for (auto& x : a.assignments) x.resource_id = rename[x.resource_id];
    CHECK(a.assignments == b.assignments);
  }
}

TEST_CASE("compare") {
  const auto s = demo_scenario();
  const std::vector<Algorithm> two{Algorithm::Dmmm, Algorithm::RoundRobin};
  const auto rs = compare(s, two);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].algorithm == Algorithm::Dmmm);
  CHECK(rs[0].makespan == 25);
  CHECK(rs[1].makespan == 20);

  const std::vector<Algorithm> one{Algorithm::MaxMin};
  CHECK(compare(s, one).size() == 1);

  const auto empty = validate_scenario({}, {}, {{"r1", build_matrix({{"c", 1}}, {{"x", 1}}), {}}});
  const auto all = all_algorithms();
  for (const auto& row : compare(empty, all)) CHECK(row.makespan == 0);
}
