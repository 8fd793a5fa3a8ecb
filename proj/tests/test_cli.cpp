#include "doctest.h"

#include "json.hpp"

#include "dmmm/errors.hpp"
#include "dmmm/io.hpp"
#include "dmmm/monitor.hpp"
#include "dmmm/scenario_io.hpp"
#include "support/cli_harness.hpp"

using namespace dmmm;
using namespace dmmm::testing;
using nlohmann::json;

namespace {

const char* kEmptyTasks = R"({"users": [], "tasks": [],
  "resources": [{"id": "r1", "matrix": {"criteria": [{"name": "c", "weight": 1}], "columns": [{"user_type": "x", "rating": 1}]}}]})";

}  // namespace

TEST_CASE("usage CSV parsing") {
  CHECK(parse_usage_csv("").empty());
  CHECK(parse_usage_csv("customer_id,resource_id,bucket_start,amount\n").empty());
  const auto recs = parse_usage_csv("customer_id,resource_id,bucket_start,amount\r\nc1,r1,0,5\r\nc1,r2,3,7\n");
  REQUIRE(recs.size() == 2);
  CHECK(recs[1] == UsageRecord{"c1", "r2", 3, 7});
  CHECK_THROWS_AS(parse_usage_csv("cust,res,b,a\n"), ParseError);
  CHECK_THROWS_AS(parse_usage_csv("customer_id,resource_id,bucket_start,amount\nc1,r1,x,5\n"), ParseError);
  CHECK_THROWS_AS(parse_usage_csv("customer_id,resource_id,bucket_start,amount\nc1,r1,0\n"), ParseError);
  CHECK_THROWS_AS(parse_usage_csv("customer_id,resource_id,bucket_start,amount\nc1,r1,0,5,6\n"), ParseError);

  const auto synth = synthesize_usage({4, 3, 2, 12, UsageProfile::Bursty});
  CHECK(parse_usage_csv(usage_csv(synth)) == synth);
}

TEST_CASE("scenario parsing errors") {
  CHECK_THROWS_AS(parse_scenario("{not json"), ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"users": [], "tasks": [], "resources": [], "extra": 1})"), ValidationError);
  CHECK_THROWS_AS(parse_scenario(R"({"users": [], "tasks": []})"), ValidationError);
  CHECK_THROWS_AS(parse_scenario(R"({"users": [], "tasks": [], "resources": [{"id": "r1"}]})"), ValidationError);
  CHECK_THROWS_AS(parse_scenario(R"({"users": [{"id": "u", "user_type": "x", "priority": 1.5}], "tasks": [], "resources": []})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_scenario(R"({"users": [], "tasks": [], "resources": [], "scheduler": {"algorithm": "bogus"}})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_scenario(R"({"users": [{"id": "u", "user_type": "x", "priority": 1, "vip": true}], "tasks": [], "resources": []})"),
                  ValidationError);
}

TEST_CASE("speed_factor spellings") {
  auto speed_of = [](const std::string& literal) {
    const std::string doc = R"({"users": [], "tasks": [], "resources": [{"id": "r1", "speed_factor": )" + literal +
                            R"(, "matrix": {"criteria": [{"name": "c", "weight": 1}], "columns": [{"user_type": "x", "rating": 1}]}}]})";
    return parse_scenario(doc).scenario.resources()[0].speed;
  };
  CHECK(speed_of("2") == SpeedFactor{2, 1});
  CHECK(speed_of("1.5") == SpeedFactor{3, 2});
  CHECK(speed_of("0.25") == SpeedFactor{1, 4});
  CHECK(speed_of("\"3/2\"") == SpeedFactor{3, 2});
  CHECK(speed_of("\"6/4\"") == SpeedFactor{3, 2});
  CHECK(speed_of("2.0") == SpeedFactor{2, 1});
  CHECK_THROWS_AS(speed_of("0"), ValidationError);
  CHECK_THROWS_AS(speed_of("-1"), ValidationError);
  CHECK_THROWS_AS(speed_of("\"abc\""), ValidationError);
  CHECK_THROWS_AS(speed_of("\"1/0\""), ValidationError);
}

TEST_CASE("cli schedule") {
  TempDir dir("schedule");
  SUBCASE("four-user demo under dmmm") {
    const auto r = run_cli({"schedule", "--scenario", data_file("four_users.json"), "--algorithm", "dmmm", "--out", dir.str()});
    CHECK(r.code == 0);
    const auto csv = slurp(dir.path() / "schedule.csv");
    CHECK(csv.rfind("task_id,resource_id,start,finish\nt4,r1,0,5\n", 0) == 0);
    CHECK(r.out.find("makespan 25") != std::string::npos);
    CHECK(slurp(dir.path() / "metrics.csv").find("dmmm,makespan,25\n") != std::string::npos);
    const auto manifest = json::parse(slurp(dir.path() / "manifest.json"));
    CHECK(manifest["command"] == "schedule");
    CHECK(manifest["args"].size() == 7);
  }
  SUBCASE("algorithm from the scenario document") {
    CHECK(run_cli({"schedule", "--scenario", data_file("four_users.json"), "--out", dir.str()}).code == 0);
    CHECK(slurp(dir.path() / "metrics.csv").rfind("algorithm,metric,value\ndmmm,", 0) == 0);
  }
  SUBCASE("unknown algorithm") {
    const auto r = run_cli({"schedule", "--scenario", data_file("four_users.json"), "--algorithm", "bogus", "--out", dir.str()});
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown algorithm") != std::string::npos);
  }
  SUBCASE("empty task set") {
    spit(dir.path() / "empty.json", kEmptyTasks);
    CHECK(run_cli({"schedule", "--scenario", dir.str("empty.json"), "--out", dir.str("o")}).code == 0);
    CHECK(slurp(dir.path() / "o" / "schedule.csv") == "task_id,resource_id,start,finish\n");
  }
  SUBCASE("exit codes partition failures") {
    CHECK(run_cli({"schedule", "--scenario", dir.str("missing.json"), "--out", dir.str()}).code == 1);
    spit(dir.path() / "bad.json", "{");
    CHECK(run_cli({"schedule", "--scenario", dir.str("bad.json"), "--out", dir.str()}).code == 1);
    spit(dir.path() / "zero.json", R"({"users": [{"id": "u", "user_type": "x", "priority": 1}],
      "tasks": [{"id": "t", "user_id": "u", "execution_time": 0}], "resources": []})");
    CHECK(run_cli({"schedule", "--scenario", dir.str("zero.json"), "--out", dir.str()}).code == 2);
    spit(dir.path() / "nores.json", R"({"users": [{"id": "u", "user_type": "x", "priority": 1}],
      "tasks": [{"id": "t", "user_id": "u", "execution_time": 3}], "resources": []})");
    CHECK(run_cli({"schedule", "--scenario", dir.str("nores.json"), "--out", dir.str()}).code == 3);
    CHECK(run_cli({"schedule"}).code == 1);
    CHECK(run_cli({"frobnicate"}).code == 1);
  }
}

TEST_CASE("cli compare") {
  TempDir dir("compare");
  auto r = run_cli({"compare", "--scenario", data_file("four_users.json"), "--algorithm", "dmmm,round-robin", "--out", dir.str()});
  CHECK(r.code == 0);
  CHECK(slurp(dir.path() / "compare.csv") ==
        "algorithm,makespan,mean_wait,max_wait,mean_utilization\n"
        "dmmm,25,1.250000,5,0.666667\n"
        "round-robin,20,3.750000,15,0.833333\n");

  r = run_cli({"compare", "--scenario", data_file("four_users.json"), "--algorithm", "max-min", "--out", dir.str()});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);

  r = run_cli({"compare", "--scenario", data_file("four_users.json"), "--algorithm", "dmmm,dmmm,min-min", "--out", dir.str()});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);

  r = run_cli({"compare", "--scenario", data_file("four_users.json"), "--out", dir.str()});
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
}

TEST_CASE("cli monitor") {
  TempDir dir("monitor");
  SUBCASE("synthesized usage classifies four customers") {
    const auto r = run_cli({"monitor", "--synthesize", "1", "--customers", "4", "--resources", "3", "--horizon", "24",
                            "--out", dir.str()});
    CHECK(r.code == 0);
    const auto users = json::parse(slurp(dir.path() / "users.json"));
    REQUIRE(users.size() == 4);
    std::vector<int> priorities;
    for (const auto& u : users) priorities.push_back(u["priority"].get<int>());
    std::sort(priorities.begin(), priorities.end());
    CHECK(priorities == std::vector<int>{1, 2, 3, 4});
    const auto report = json::parse(slurp(dir.path() / "report.json"));
    CHECK(report["customers"].size() == 4);
    CHECK(json::parse(slurp(dir.path() / "manifest.json"))["seed"] == 1);
  }
  SUBCASE("flat profile ties fall back to id order") {
    CHECK(run_cli({"monitor", "--synthesize", "--profile", "flat", "--out", dir.str()}).code == 0);
    const auto users = json::parse(slurp(dir.path() / "users.json"));
    CHECK(users[0]["id"] == "c1");
    CHECK(users[0]["priority"] == 4);
    CHECK(users[3]["priority"] == 1);
  }
  SUBCASE("empty usage file") {
    spit(dir.path() / "usage.csv", "");
    const auto r = run_cli({"monitor", "--usage", dir.str("usage.csv"), "--out", dir.str("o")});
    CHECK(r.code == 0);
    CHECK(json::parse(slurp(dir.path() / "o" / "report.json"))["customers"].empty());
    CHECK(json::parse(slurp(dir.path() / "o" / "users.json")).empty());
  }
  SUBCASE("threshold ordering") {
    CHECK(run_cli({"monitor", "--synthesize", "--peak-threshold", "5", "--dormant-threshold", "5", "--out", dir.str()}).code == 2);
  }
  SUBCASE("malformed csv") {
    spit(dir.path() / "usage.csv", "customer_id,resource_id,bucket_start,amount\nc1,r1,zero,1\n");
    CHECK(run_cli({"monitor", "--usage", dir.str("usage.csv"), "--out", dir.str()}).code == 1);
  }
  SUBCASE("negative amount") {
    spit(dir.path() / "usage.csv", "customer_id,resource_id,bucket_start,amount\nc1,r1,0,-1\n");
    CHECK(run_cli({"monitor", "--usage", dir.str("usage.csv"), "--out", dir.str()}).code == 2);
  }
  SUBCASE("no source") { CHECK(run_cli({"monitor", "--out", dir.str()}).code == 2); }
}

TEST_CASE("cli pipeline") {
  TempDir dir("pipeline");
  const std::vector<std::string> args{"pipeline", "--scenario", data_file("pipeline.json"), "--synthesize", "--seed", "1",
                                      "--out", dir.str()};
  const auto r = run_cli(args);
  REQUIRE(r.code == 0);
  for (const char* f : {"usage.csv", "report.json", "users.json", "scenario.json", "schedule.csv", "metrics.csv", "manifest.json"}) {
    CHECK(std::filesystem::exists(dir.path() / f));
  }
  CHECK(slurp(dir.path() / "schedule.csv").find("\nt4,r1,0,5\n") != std::string::npos);

  // the resolved scenario is itself a valid scenario document
  const auto resolved = load_scenario(dir.path() / "scenario.json");
  CHECK(resolved.scenario.resources()[0].matrix.column_totals() == std::vector<std::int64_t>{24, 18, 12, 6});

  SUBCASE("missing matrix") {
    spit(dir.path() / "nomatrix.json", R"({"tasks": [], "resources": [{"id": "r1"}]})");
    CHECK(run_cli({"pipeline", "--scenario", dir.str("nomatrix.json"), "--synthesize", "--out", dir.str("o")}).code == 2);
  }
  SUBCASE("unknown owner after classification") {
    spit(dir.path() / "stranger.json", R"({"tasks": [{"id": "t1", "user_id": "zz", "execution_time": 1}],
      "resources": [{"id": "r1", "matrix": {"criteria": [{"name": "c", "weight": 1}]}}]})");
    CHECK(run_cli({"pipeline", "--scenario", dir.str("stranger.json"), "--synthesize", "--out", dir.str("o")}).code == 2);
  }
}
