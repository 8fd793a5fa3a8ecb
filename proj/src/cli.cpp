#include "dmmm/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dmmm/errors.hpp"
#include "dmmm/io.hpp"
#include "dmmm/monitor.hpp"
#include "dmmm/scenario_io.hpp"
#include "dmmm/schedulers.hpp"

namespace dmmm::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string scenario;
  std::string algorithms;
  bool priority_first = false;
  std::uint64_t seed = 1;
  std::string out = "out";
  long long peak_threshold = kDefaultPeakThreshold;
  long long dormant_threshold = kDefaultDormantThreshold;
  std::vector<std::uint64_t> synthesize;  // empty value list still means "synthesize"
  bool synthesize_given = false;
  std::string usage;
  int customers = 4;
  int resources = 3;
  long long horizon = 24;
  std::string profile = "diurnal";
};

// The run manifest: which inputs and flags produced the outputs next to it.
struct RunManifest {
  std::string command;
  std::string scenario;
  std::vector<std::string> algorithms;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> args;

  json to_json() const {
    json j = {{"command", command},
              {"algorithms", algorithms},
              {"out", out},
              {"args", args}};
    j["scenario"] = scenario.empty() ? json(nullptr) : json(scenario);
    j["seed"] = seed ? json(*seed) : json(nullptr);
    return j;
  }
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ParseError("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw ParseError("failed writing '" + path.string() + "'");
}

fs::path prepare_out(const Options& o) {
  fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ParseError("cannot create output directory '" + o.out + "': " + ec.message());
  return dir;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find(',', start);
    auto item = text.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    if (!item.empty()) out.push_back(item);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

Algorithm single_algorithm(const Options& o, const SchedulerSection& section) {
  if (o.algorithms.empty()) return section.algorithm.value_or(Algorithm::Dmmm);
  auto names = split_list(o.algorithms);
  if (names.size() != 1) {
    throw ValidationError(ValidationCode::InvalidArgument, "this command takes exactly one --algorithm");
  }
  return parse_algorithm(names.front());
}

// Writes schedule.csv and metrics.csv; returns the schedule.
Schedule schedule_and_write(const Scenario& scenario, SchedulerConfig config, const fs::path& dir, std::ostream& out) {
  const Schedule schedule = run_scheduler(scenario, config);
  const Metrics m = metrics(schedule);
  write_file(dir / "schedule.csv", schedule_csv(schedule));
  write_file(dir / "metrics.csv", metrics_csv(to_string(config.algorithm), m));
  out << to_string(config.algorithm) << ": makespan " << m.makespan << ", " << schedule.assignments.size()
      << " assignments on " << schedule.resource_ids.size() << " resources\n";
  return schedule;
}

struct MonitorResult {
  std::vector<UsageRecord> records;
  UsageReport report;
  std::vector<UserProfile> users;
  std::optional<std::uint64_t> seed;
};

MonitorResult monitor_stage(const Options& o) {
  MonitorResult r;
  if (o.synthesize_given && !o.usage.empty()) {
    throw ValidationError(ValidationCode::InvalidArgument, "give either --usage or --synthesize, not both");
  }
  if (o.synthesize_given) {
    SynthesisParams p;
    p.seed = o.synthesize.empty() ? o.seed : o.synthesize.front();
    p.customers = o.customers;
    p.resources = o.resources;
    p.horizon = o.horizon;
    p.profile = parse_profile(o.profile);
    r.seed = p.seed;
    r.records = synthesize_usage(p);
  } else if (!o.usage.empty()) {
    r.records = parse_usage_csv(read_file(o.usage));
  } else {
    throw ValidationError(ValidationCode::InvalidArgument, "no usage source: give --usage PATH or --synthesize");
  }
  const UsageStore store = ingest_usage(r.records);
  r.report = build_report(store, o.peak_threshold, o.dormant_threshold);
  r.users = classify_users(r.report, ClassificationRule::quartiles());
  return r;
}

void write_monitor(const MonitorResult& r, const Options& o, const fs::path& dir, std::ostream& out) {
  if (o.synthesize_given) write_file(dir / "usage.csv", usage_csv(r.records));
  write_file(dir / "report.json", dump(report_to_json(r.report)));
  write_file(dir / "users.json", dump(users_to_json(r.users)));
  out << "monitored " << r.report.customer_totals.size() << " customers over " << r.report.horizon
      << " buckets: " << r.report.peak_windows.size() << " peak windows, " << r.report.dormant_windows.size()
      << " dormant windows\n";
  for (const auto& u : r.users) out << "  " << u.id << " -> " << u.user_type << " (priority " << u.priority << ")\n";
}

int cmd_schedule(const Options& o, RunManifest& manifest, std::ostream& out) {
  const auto doc = load_scenario(o.scenario);
  SchedulerConfig config{single_algorithm(o, doc.scheduler),
                         o.priority_first || doc.scheduler.priority_first.value_or(false)};
  manifest.algorithms = {std::string(to_string(config.algorithm))};
  const auto dir = prepare_out(o);
  schedule_and_write(doc.scenario, config, dir, out);
  write_file(dir / "manifest.json", dump(manifest.to_json()));
  return kOk;
}

int cmd_compare(const Options& o, RunManifest& manifest, std::ostream& out, std::ostream& err) {
  const auto doc = load_scenario(o.scenario);
  std::vector<Algorithm> algorithms;
  if (o.algorithms.empty()) {
    algorithms = all_algorithms();
  } else {
    for (const auto& name : split_list(o.algorithms)) {
      const Algorithm a = parse_algorithm(name);
      if (std::find(algorithms.begin(), algorithms.end(), a) != algorithms.end()) {
        err << "warning: algorithm '" << name << "' listed more than once; keeping the first\n";
        continue;
      }
      algorithms.push_back(a);
    }
  }
  if (algorithms.empty()) throw ValidationError(ValidationCode::InvalidArgument, "no algorithms selected");
  for (auto a : algorithms) manifest.algorithms.emplace_back(to_string(a));

  const bool pf = o.priority_first || doc.scheduler.priority_first.value_or(false);
  const auto rows = compare(doc.scenario, algorithms, pf);
  const auto dir = prepare_out(o);
  const auto csv = compare_csv(rows);
  write_file(dir / "compare.csv", csv);
  write_file(dir / "manifest.json", dump(manifest.to_json()));
  out << csv;
  return kOk;
}

int cmd_monitor(const Options& o, RunManifest& manifest, std::ostream& out) {
  const auto result = monitor_stage(o);
  manifest.seed = result.seed;
  const auto dir = prepare_out(o);
  write_monitor(result, o, dir, out);
  write_file(dir / "manifest.json", dump(manifest.to_json()));
  return kOk;
}

int cmd_pipeline(const Options& o, RunManifest& manifest, std::ostream& out) {
  // (a) monitor, (b) report
  const auto result = monitor_stage(o);
  manifest.seed = result.seed;
  // (c) user priorities feed the scenario; matrices without explicit columns
  // are rated from them
  const auto doc = load_scenario(o.scenario, result.users);
  SchedulerConfig config{single_algorithm(o, doc.scheduler),
                         o.priority_first || doc.scheduler.priority_first.value_or(false)};
  manifest.algorithms = {std::string(to_string(config.algorithm))};

  const auto dir = prepare_out(o);
  write_monitor(result, o, dir, out);
  write_file(dir / "scenario.json", dump(to_json(doc.scenario, doc.scheduler)));
  // (d) service in priority/decision-matrix order
  schedule_and_write(doc.scenario, config, dir, out);
  write_file(dir / "manifest.json", dump(manifest.to_json()));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision-matrix based max-min scheduling and usage monitoring"};
  app.name("dmmm");
  app.require_subcommand(1);
  Options o;

  auto add_scenario = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--scenario", o.scenario, "Scenario document (JSON)");
    if (required) opt->required();
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output directory")->capture_default_str(); };
  auto add_scheduling = [&](CLI::App* sub, const char* help) {
    sub->add_option("--algorithm", o.algorithms, help);
    sub->add_flag("--priority-first", o.priority_first, "Serve higher owner priority before shorter tasks");
  };
  auto add_monitoring = [&](CLI::App* sub) {
    sub->add_option("--usage", o.usage, "Usage CSV (customer_id,resource_id,bucket_start,amount)");
    sub->add_option("--synthesize", o.synthesize, "Generate synthetic usage, optionally with this seed")
        ->expected(0, 1);
    sub->add_option("--seed", o.seed, "Seed for synthetic usage")->capture_default_str();
    sub->add_option("--customers", o.customers)->capture_default_str();
    sub->add_option("--resources", o.resources)->capture_default_str();
    sub->add_option("--horizon", o.horizon)->capture_default_str();
    sub->add_option("--profile", o.profile, "flat, bursty or diurnal")->capture_default_str();
    sub->add_option("--peak-threshold", o.peak_threshold)->capture_default_str();
    sub->add_option("--dormant-threshold", o.dormant_threshold)->capture_default_str();
  };

  auto* schedule = app.add_subcommand("schedule", "Schedule a scenario with one algorithm");
  add_scenario(schedule, true);
  add_scheduling(schedule, "dmmm, min-min, max-min or round-robin");
  add_out(schedule);

  auto* cmp = app.add_subcommand("compare", "Compare algorithms on a scenario");
  add_scenario(cmp, true);
  add_scheduling(cmp, "Comma-separated algorithm list (default: all)");
  add_out(cmp);

  auto* monitor = app.add_subcommand("monitor", "Report usage patterns and classify customers");
  add_monitoring(monitor);
  add_out(monitor);

  auto* pipeline = app.add_subcommand("pipeline", "Monitor, classify, then schedule");
  add_scenario(pipeline, true);
  add_scheduling(pipeline, "Scheduler for the final stage (default: dmmm)");
  add_monitoring(pipeline);
  add_out(pipeline);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  RunManifest manifest;
  manifest.scenario = o.scenario;
  manifest.out = o.out;
  manifest.args = args;
  try {
    if (*schedule) {
      manifest.command = "schedule";
      return cmd_schedule(o, manifest, out);
    }
    if (*cmp) {
      manifest.command = "compare";
      return cmd_compare(o, manifest, out, err);
    }
    o.synthesize_given = (*monitor ? monitor : pipeline)->count("--synthesize") > 0;
    if (*monitor) {
      manifest.command = "monitor";
      return cmd_monitor(o, manifest, out);
    }
    manifest.command = "pipeline";
    return cmd_pipeline(o, manifest, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidationError;
  } catch (const SchedulingError& e) {
    err << "scheduling error: " << e.what() << "\n";
    return kSchedulingError;
  }
}

}  // namespace dmmm::cli
