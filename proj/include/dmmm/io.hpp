#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "dmmm/model.hpp"
#include "dmmm/schedulers.hpp"
#include "dmmm/sim.hpp"

namespace dmmm {

// Tabular outputs are CSV with a fixed header and '\n' line endings; numbers
// that are not integers are written with six decimals.

/// Header `customer_id,resource_id,bucket_start,amount`. An empty text is an
/// empty record list. Throws ParseError with the offending line number.
std::vector<UsageRecord> parse_usage_csv(const std::string& text);
std::string usage_csv(std::span<const UsageRecord> records);

/// `task_id,resource_id,start,finish`, one row per assignment in binding order.
std::string schedule_csv(const Schedule& schedule);

/// Long format `algorithm,metric,value`: makespan, mean_wait, max_wait,
/// mean_utilization, then utilization[<resource>] for every resource.
std::string metrics_csv(std::string_view algorithm, const Metrics& metrics);

/// `algorithm,makespan,mean_wait,max_wait,mean_utilization`.
std::string compare_csv(std::span<const ComparisonRow> rows);

nlohmann::json report_to_json(const UsageReport& report);

std::string format_fixed(double value);

}  // namespace dmmm
