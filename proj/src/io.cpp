#include "dmmm/io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "dmmm/errors.hpp"

namespace dmmm {

namespace {

constexpr std::string_view kUsageHeader = "customer_id,resource_id,bucket_start,amount";

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::int64_t parse_int(std::string_view text, std::size_t line_no, const char* column) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("usage CSV line " + std::to_string(line_no) + ": " + column + " '" + std::string(text) +
                     "' is not an integer");
  }
  return v;
}

}  // namespace

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

std::vector<UsageRecord> parse_usage_csv(const std::string& text) {
  std::vector<UsageRecord> records;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kUsageHeader) {
        throw ParseError("usage CSV line " + std::to_string(line_no) + ": expected header '" +
                         std::string(kUsageHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != 4) {
      throw ParseError("usage CSV line " + std::to_string(line_no) + ": expected 4 fields, got " +
                       std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError("usage CSV line " + std::to_string(line_no) + ": empty id");
    }
    records.push_back({std::string(fields[0]), std::string(fields[1]), parse_int(fields[2], line_no, "bucket_start"),
                       parse_int(fields[3], line_no, "amount")});
  }
  return records;
}

std::string usage_csv(std::span<const UsageRecord> records) {
  std::string out(kUsageHeader);
  out += '\n';
  for (const auto& r : records) {
    out += r.customer_id + ',' + r.resource_id + ',' + std::to_string(r.bucket_start) + ',' +
           std::to_string(r.amount) + '\n';
  }
  return out;
}

std::string schedule_csv(const Schedule& schedule) {
  std::string out = "task_id,resource_id,start,finish\n";
  for (const auto& a : schedule.assignments) {
    out += a.task_id + ',' + a.resource_id + ',' + std::to_string(a.start) + ',' + std::to_string(a.finish) + '\n';
  }
  return out;
}

std::string metrics_csv(std::string_view algorithm, const Metrics& m) {
  const std::string key(algorithm);
  std::string out = "algorithm,metric,value\n";
  out += key + ",makespan," + std::to_string(m.makespan) + '\n';
  out += key + ",mean_wait," + format_fixed(m.mean_wait) + '\n';
  out += key + ",max_wait," + std::to_string(m.max_wait) + '\n';
  out += key + ",mean_utilization," + format_fixed(m.mean_utilization()) + '\n';
  for (const auto& u : m.utilization) {
    out += key + ",utilization[" + u.resource_id + "]," + format_fixed(u.value()) + '\n';
  }
  return out;
}

std::string compare_csv(std::span<const ComparisonRow> rows) {
  std::string out = "algorithm,makespan,mean_wait,max_wait,mean_utilization\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.algorithm)) + ',' + std::to_string(r.makespan) + ',' + format_fixed(r.mean_wait) +
           ',' + std::to_string(r.max_wait) + ',' + format_fixed(r.mean_utilization) + '\n';
  }
  return out;
}

nlohmann::json report_to_json(const UsageReport& report) {
  using nlohmann::json;
  json customers = json::array();
  for (const auto& [id, total] : report.customer_totals) {
    json resources = json::array();
    if (auto it = report.resource_totals.find(id); it != report.resource_totals.end()) {
      for (const auto& [rid, rtotal] : it->second) resources.push_back({{"resource_id", rid}, {"total", rtotal}});
    }
    customers.push_back({{"customer_id", id}, {"total", total}, {"resources", resources}});
  }
  auto windows = [](const std::vector<CustomerWindow>& ws) {
    json arr = json::array();
    for (const auto& w : ws) {
      arr.push_back({{"customer_id", w.customer_id}, {"start", w.window.start}, {"end", w.window.end}});
    }
    return arr;
  };
  return {{"horizon", report.horizon},
          {"peak_threshold", report.peak_threshold},
          {"dormant_threshold", report.dormant_threshold},
          {"customers", customers},
          {"peak_windows", windows(report.peak_windows)},
          {"dormant_windows", windows(report.dormant_windows)}};
}

}  // namespace dmmm
