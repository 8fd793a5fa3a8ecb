#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dmmm/model.hpp"
#include "dmmm/schedulers.hpp"

namespace dmmm {

/// Optional `scheduler` section of a scenario document.
struct SchedulerSection {
  std::optional<Algorithm> algorithm;
  std::optional<bool> priority_first;

  friend bool operator==(const SchedulerSection&, const SchedulerSection&) = default;
};

struct ScenarioDocument {
  Scenario scenario;
  SchedulerSection scheduler;
};

// Scenario document layout:
//
//   { "users":     [{"id", "user_type", "priority"}],
//     "tasks":     [{"id", "user_id", "execution_time"}],
//     "resources": [{"id", "speed_factor"?,
//                    "matrix": {"criteria": [{"name", "weight"}],
//                               "columns"?: [{"user_type", "rating"}]}}],
//     "scheduler"?: {"algorithm"?, "priority_first"?} }
//
// Unknown keys are rejected at every level. A matrix without "columns" takes
// one column per user type rated with its priority (matrix_from_priorities).
// speed_factor is a positive integer, a decimal, or a "p/q" string.
//
// When `users_override` is given, the document's own "users" key is ignored
// and may be absent.
ScenarioDocument scenario_from_json(const nlohmann::json& doc,
                                    const std::optional<std::vector<UserProfile>>& users_override = std::nullopt);

/// Parses text, throwing ParseError on malformed JSON.
ScenarioDocument parse_scenario(const std::string& text,
                                const std::optional<std::vector<UserProfile>>& users_override = std::nullopt);
ScenarioDocument load_scenario(const std::filesystem::path& path,
                               const std::optional<std::vector<UserProfile>>& users_override = std::nullopt);

/// Canonical form: columns always explicit, speed_factor as an integer or
/// "p/q". scenario_from_json(to_json(s)) reproduces s exactly.
nlohmann::json to_json(const Scenario& scenario, const SchedulerSection& scheduler = {});

nlohmann::json users_to_json(const std::vector<UserProfile>& users);

/// Reads a whole file; throws ParseError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace dmmm
