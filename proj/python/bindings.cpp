#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dmmm/cli.hpp"
#include "dmmm/decision.hpp"
#include "dmmm/errors.hpp"
#include "dmmm/io.hpp"
#include "dmmm/monitor.hpp"
#include "dmmm/scenario_io.hpp"
#include "dmmm/schedulers.hpp"
#include "dmmm/sim.hpp"

namespace py = pybind11;
using namespace dmmm;

namespace {

SchedulerConfig config_for(const std::string& algorithm, bool priority_first) {
  return SchedulerConfig{parse_algorithm(algorithm), priority_first};
}

UsageReport report_for(const std::vector<UsageRecord>& records, std::int64_t peak, std::int64_t dormant) {
  return build_report(ingest_usage(records), peak, dormant);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decision-matrix based max-min scheduling, baselines and usage monitoring";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SchedulingError>(m, "SchedulingError", base.ptr());

  py::class_<Criterion>(m, "Criterion")
      .def(py::init<std::string, std::int64_t>(), py::arg("name"), py::arg("weight"))
      .def_readonly("name", &Criterion::name)
      .def_readonly("weight", &Criterion::weight);

  py::class_<Column>(m, "Column")
      .def(py::init<std::string, std::int64_t>(), py::arg("user_type"), py::arg("rating"))
      .def_readonly("user_type", &Column::user_type)
      .def_readonly("rating", &Column::rating);

  py::class_<DecisionMatrix>(m, "DecisionMatrix")
      .def_property_readonly("criteria", &DecisionMatrix::criteria)
      .def_property_readonly("columns", &DecisionMatrix::columns)
      .def_property_readonly("column_totals", &DecisionMatrix::column_totals)
      .def_property_readonly("score", &DecisionMatrix::score)
      .def("cell", &DecisionMatrix::cell, py::arg("criterion"), py::arg("column"));

  py::class_<UserProfile>(m, "UserProfile")
      .def(py::init<std::string, std::string, std::int64_t>(), py::arg("id"), py::arg("user_type"),
           py::arg("priority"))
      .def_readonly("id", &UserProfile::id)
      .def_readonly("user_type", &UserProfile::user_type)
      .def_readonly("priority", &UserProfile::priority)
      .def("__repr__", [](const UserProfile& u) {
        return "UserProfile(" + u.id + ", " + u.user_type + ", " + std::to_string(u.priority) + ")";
      });

  py::class_<Task>(m, "Task")
      .def_readonly("id", &Task::id)
      .def_readonly("user_id", &Task::user_id)
      .def_readonly("execution_time", &Task::execution_time);

  py::class_<Resource>(m, "Resource")
      .def_readonly("id", &Resource::id)
      .def_readonly("matrix", &Resource::matrix)
      .def_property_readonly("speed_factor", [](const Resource& r) { return py::make_tuple(r.speed.num, r.speed.den); });

  py::class_<Scenario>(m, "Scenario")
      .def_property_readonly("users", &Scenario::users)
      .def_property_readonly("tasks", &Scenario::tasks)
      .def_property_readonly("resources", &Scenario::resources)
      .def("to_json", [](const Scenario& s) { return to_json(s).dump(); })
      .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });

  py::class_<Assignment>(m, "Assignment")
      .def_readonly("task_id", &Assignment::task_id)
      .def_readonly("resource_id", &Assignment::resource_id)
      .def_readonly("start", &Assignment::start)
      .def_readonly("finish", &Assignment::finish)
      .def("__iter__", [](const Assignment& a) {
        return py::iter(py::make_tuple(a.task_id, a.resource_id, a.start, a.finish));
      })
      .def("__repr__", [](const Assignment& a) {
        return "Assignment(" + a.task_id + ", " + a.resource_id + ", " + std::to_string(a.start) + ", " +
               std::to_string(a.finish) + ")";
      });

  py::class_<Schedule>(m, "Schedule")
      .def_readonly("assignments", &Schedule::assignments)
      .def_readonly("resource_ids", &Schedule::resource_ids)
      .def_readonly("makespan", &Schedule::makespan)
      .def("to_csv", &schedule_csv)
      .def("__eq__", [](const Schedule& a, const Schedule& b) { return a == b; });

  py::class_<Metrics>(m, "Metrics")
      .def_readonly("makespan", &Metrics::makespan)
      .def_readonly("mean_wait", &Metrics::mean_wait)
      .def_readonly("max_wait", &Metrics::max_wait)
      .def_readonly("waits", &Metrics::waits)
      .def_property_readonly("mean_utilization", &Metrics::mean_utilization)
      .def_property_readonly("utilization", [](const Metrics& mt) {
        py::dict d;
        for (const auto& u : mt.utilization) d[py::str(u.resource_id)] = u.value();
        return d;
      });

  py::class_<ComparisonRow>(m, "ComparisonRow")
      .def_property_readonly("algorithm", [](const ComparisonRow& r) { return std::string(to_string(r.algorithm)); })
      .def_readonly("makespan", &ComparisonRow::makespan)
      .def_readonly("mean_wait", &ComparisonRow::mean_wait)
      .def_readonly("max_wait", &ComparisonRow::max_wait)
      .def_readonly("mean_utilization", &ComparisonRow::mean_utilization);

  py::class_<UsageRecord>(m, "UsageRecord")
      .def(py::init<std::string, std::string, Time, std::int64_t>(), py::arg("customer_id"), py::arg("resource_id"),
           py::arg("bucket_start"), py::arg("amount"))
      .def_readonly("customer_id", &UsageRecord::customer_id)
      .def_readonly("resource_id", &UsageRecord::resource_id)
      .def_readonly("bucket_start", &UsageRecord::bucket_start)
      .def_readonly("amount", &UsageRecord::amount);

  // decision engine
  m.def("build_matrix", &build_matrix, py::arg("criteria"), py::arg("columns"));
  m.def("column_total", &column_total, py::arg("matrix"), py::arg("user_type"));
  m.def("matrix_score", &matrix_score, py::arg("matrix"));
  m.def("best_user_type", &best_user_type, py::arg("matrix"));
  m.def("rank_resources", [](const Scenario& s) { return rank_resources(s.resources()); }, py::arg("scenario"));

  // scenarios and scheduling
  m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text).scenario; }, py::arg("text"));
  m.def("load_scenario", [](const std::string& path) { return load_scenario(path).scenario; }, py::arg("path"));
  m.def(
      "schedule",
      [](const Scenario& s, const std::string& algorithm, bool pf) { return run_scheduler(s, config_for(algorithm, pf)); },
      py::arg("scenario"), py::arg("algorithm") = "dmmm", py::arg("priority_first") = false);
  m.def(
      "oracle_schedule",
      [](const Scenario& s, const std::string& algorithm, bool pf) {
        return oracle_execute(s, make_policy(s, config_for(algorithm, pf)));
      },
      py::arg("scenario"), py::arg("algorithm") = "dmmm", py::arg("priority_first") = false);
  m.def("check_schedule", &check_schedule, py::arg("scenario"), py::arg("schedule"));
  m.def("metrics", [](const Schedule& s) { return metrics(s); }, py::arg("schedule"));
  m.def(
      "compare",
      [](const Scenario& s, const std::vector<std::string>& names, bool pf) {
        std::vector<Algorithm> algorithms;
        for (const auto& n : names) algorithms.push_back(parse_algorithm(n));
        return compare(s, algorithms, pf);
      },
      py::arg("scenario"), py::arg("algorithms"), py::arg("priority_first") = false);

  // monitoring
  m.def(
      "synthesize_usage",
      [](std::uint64_t seed, int customers, int resources, Time horizon, const std::string& profile) {
        return synthesize_usage(SynthesisParams{seed, customers, resources, horizon, parse_profile(profile)});
      },
      py::arg("seed"), py::arg("customers"), py::arg("resources"), py::arg("horizon"), py::arg("profile") = "diurnal");
  m.def(
      "report_json",
      [](const std::vector<UsageRecord>& records, std::int64_t peak, std::int64_t dormant) {
        return report_to_json(report_for(records, peak, dormant)).dump();
      },
      py::arg("records"), py::arg("peak_threshold"), py::arg("dormant_threshold"));
  m.def(
      "classify_users",
      [](const std::vector<UsageRecord>& records, std::int64_t peak, std::int64_t dormant) {
        return classify_users(report_for(records, peak, dormant), ClassificationRule::quartiles());
      },
      py::arg("records"), py::arg("peak_threshold") = cli::kDefaultPeakThreshold,
      py::arg("dormant_threshold") = cli::kDefaultDormantThreshold);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
