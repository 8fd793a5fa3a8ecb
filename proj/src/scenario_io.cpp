#include "dmmm/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "dmmm/decision.hpp"
#include "dmmm/errors.hpp"

namespace dmmm {

using nlohmann::json;

namespace {

[[noreturn]] void fail(ValidationCode code, const std::string& where, const std::string& what) {
  throw ValidationError(code, where + ": " + what);
}

void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(ValidationCode::WrongType, where, "expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) fail(ValidationCode::UnknownKey, where, "'" + item.key() + "'");
  }
}

const json& field(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ValidationCode::MissingField, where, std::string("'") + key + "'");
  return *it;
}

std::string get_string(const json& obj, const std::string& where, const char* key) {
  const auto& v = field(obj, where, key);
  if (!v.is_string()) fail(ValidationCode::WrongType, where, std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::int64_t as_int(const json& v, const std::string& where, const char* key) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      fail(ValidationCode::Overflow, where, std::string("'") + key + "'");
    }
    return v.get<std::int64_t>();
  }
  fail(ValidationCode::WrongType, where, std::string("'") + key + "' must be an integer");
}

std::int64_t get_int(const json& obj, const std::string& where, const char* key) {
  return as_int(field(obj, where, key), where, key);
}

const json& get_array(const json& obj, const std::string& where, const char* key) {
  const auto& v = field(obj, where, key);
  if (!v.is_array()) fail(ValidationCode::WrongType, where, std::string("'") + key + "' must be an array");
  return v;
}

// "3", "3/2", "1.25", "2.5e-1"
SpeedFactor parse_ratio_text(const std::string& text, const std::string& where) {
  auto bad = [&] { fail(ValidationCode::InvalidSpeedFactor, where, "'" + text + "'"); };
  auto digits = [](const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
  };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const auto p = text.substr(0, slash);
    const auto q = text.substr(slash + 1);
    if (!digits(p) || !digits(q) || p.size() > 18 || q.size() > 18) bad();
    return SpeedFactor::make(std::stoll(p), std::stoll(q));
  }
  std::string mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    std::string ex = text.substr(e + 1);
    const bool neg = !ex.empty() && ex[0] == '-';
    if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) ex = ex.substr(1);
    if (!digits(ex) || ex.size() > 3) bad();
    exponent = neg ? -std::stol(ex) : std::stol(ex);
  }
  std::string whole = mantissa;
  std::string frac;
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    whole = mantissa.substr(0, dot);
    frac = mantissa.substr(dot + 1);
  }
  if (whole.empty()) whole = "0";
  if (!digits(whole) || (!frac.empty() && !digits(frac))) bad();
  std::string all = whole + frac;
  exponent -= static_cast<long>(frac.size());
  while (exponent > 0) {
    all += '0';
    --exponent;
  }
  std::string den = "1";
  den.append(static_cast<std::size_t>(-exponent), '0');
  all.erase(0, std::min(all.find_first_not_of('0'), all.size() - 1));
  if (all.size() > 18 || den.size() > 18) bad();
  return SpeedFactor::make(std::stoll(all), std::stoll(den));
}

SpeedFactor parse_speed(const json& v, const std::string& where) {
  if (v.is_number_integer()) return SpeedFactor::make(as_int(v, where, "speed_factor"), 1);
  if (v.is_number_float()) return parse_ratio_text(v.dump(), where);
  if (v.is_string()) return parse_ratio_text(v.get<std::string>(), where);
  fail(ValidationCode::WrongType, where, "'speed_factor' must be a number or \"p/q\" string");
}

std::vector<UserProfile> parse_users(const json& arr) {
  std::vector<UserProfile> users;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "users[" + std::to_string(i) + "]";
    allow_keys(arr[i], where, {"id", "user_type", "priority"});
    users.push_back({get_string(arr[i], where, "id"), get_string(arr[i], where, "user_type"),
                     get_int(arr[i], where, "priority")});
  }
  return users;
}

std::vector<Task> parse_tasks(const json& arr) {
  std::vector<Task> tasks;
  tasks.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "tasks[" + std::to_string(i) + "]";
    allow_keys(arr[i], where, {"id", "user_id", "execution_time"});
    tasks.push_back({get_string(arr[i], where, "id"), get_string(arr[i], where, "user_id"),
                     get_int(arr[i], where, "execution_time")});
  }
  return tasks;
}

DecisionMatrix parse_matrix(const json& m, const std::string& where, const std::vector<UserProfile>& users) {
  allow_keys(m, where, {"criteria", "columns"});
  std::vector<Criterion> criteria;
  const auto& carr = get_array(m, where, "criteria");
  for (std::size_t i = 0; i < carr.size(); ++i) {
    const std::string cw = where + ".criteria[" + std::to_string(i) + "]";
    allow_keys(carr[i], cw, {"name", "weight"});
    criteria.push_back({get_string(carr[i], cw, "name"), get_int(carr[i], cw, "weight")});
  }
  auto cols = m.find("columns");
  if (cols == m.end()) return matrix_from_priorities(std::move(criteria), users);
  if (!cols->is_array()) fail(ValidationCode::WrongType, where, "'columns' must be an array");
  std::vector<Column> columns;
  for (std::size_t i = 0; i < cols->size(); ++i) {
    const std::string cw = where + ".columns[" + std::to_string(i) + "]";
    allow_keys((*cols)[i], cw, {"user_type", "rating"});
    columns.push_back({get_string((*cols)[i], cw, "user_type"), get_int((*cols)[i], cw, "rating")});
  }
  return build_matrix(std::move(criteria), std::move(columns));
}

Resource parse_resource(const json& obj, const std::string& where, const std::vector<UserProfile>& users) {
  allow_keys(obj, where, {"id", "speed_factor", "matrix"});
  std::string id = get_string(obj, where, "id");
  SpeedFactor speed;
  if (auto it = obj.find("speed_factor"); it != obj.end()) speed = parse_speed(*it, where);
  return Resource{std::move(id), parse_matrix(field(obj, where, "matrix"), where + ".matrix", users), speed};
}

SchedulerSection parse_scheduler(const json& obj) {
  allow_keys(obj, "scheduler", {"algorithm", "priority_first"});
  SchedulerSection s;
  if (auto it = obj.find("algorithm"); it != obj.end()) {
    if (!it->is_string()) fail(ValidationCode::WrongType, "scheduler", "'algorithm' must be a string");
    s.algorithm = parse_algorithm(it->get<std::string>());
  }
  if (auto it = obj.find("priority_first"); it != obj.end()) {
    if (!it->is_boolean()) fail(ValidationCode::WrongType, "scheduler", "'priority_first' must be a boolean");
    s.priority_first = it->get<bool>();
  }
  return s;
}

}  // namespace

ScenarioDocument scenario_from_json(const json& doc, const std::optional<std::vector<UserProfile>>& users_override) {
  allow_keys(doc, "scenario", {"users", "tasks", "resources", "scheduler"});
  std::vector<UserProfile> users =
      users_override ? *users_override : parse_users(get_array(doc, "scenario", "users"));
  std::vector<Task> tasks = parse_tasks(get_array(doc, "scenario", "tasks"));
  std::vector<Resource> resources;
  const auto& rarr = get_array(doc, "scenario", "resources");
  for (std::size_t i = 0; i < rarr.size(); ++i) {
    resources.push_back(parse_resource(rarr[i], "resources[" + std::to_string(i) + "]", users));
  }
  SchedulerSection scheduler;
  if (auto it = doc.find("scheduler"); it != doc.end()) scheduler = parse_scheduler(*it);
  return {validate_scenario(std::move(tasks), std::move(users), std::move(resources)), scheduler};
}

ScenarioDocument parse_scenario(const std::string& text, const std::optional<std::vector<UserProfile>>& users_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return scenario_from_json(doc, users_override);
}

ScenarioDocument load_scenario(const std::filesystem::path& path,
                               const std::optional<std::vector<UserProfile>>& users_override) {
  return parse_scenario(read_file(path), users_override);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json users_to_json(const std::vector<UserProfile>& users) {
  json arr = json::array();
  for (const auto& u : users) arr.push_back({{"id", u.id}, {"user_type", u.user_type}, {"priority", u.priority}});
  return arr;
}

json to_json(const Scenario& scenario, const SchedulerSection& scheduler) {
  json doc;
  doc["users"] = users_to_json(scenario.users());
  doc["tasks"] = json::array();
  for (const auto& t : scenario.tasks()) {
    doc["tasks"].push_back({{"id", t.id}, {"user_id", t.user_id}, {"execution_time", t.execution_time}});
  }
  doc["resources"] = json::array();
  for (const auto& r : scenario.resources()) {
    json criteria = json::array();
    for (const auto& c : r.matrix.criteria()) criteria.push_back({{"name", c.name}, {"weight", c.weight}});
    json columns = json::array();
    for (const auto& c : r.matrix.columns()) columns.push_back({{"user_type", c.user_type}, {"rating", c.rating}});
    json res = {{"id", r.id}, {"matrix", {{"criteria", criteria}, {"columns", columns}}}};
    if (r.speed.den == 1) {
      res["speed_factor"] = r.speed.num;
    } else {
      res["speed_factor"] = std::to_string(r.speed.num) + "/" + std::to_string(r.speed.den);
    }
    doc["resources"].push_back(std::move(res));
  }
  if (scheduler.algorithm || scheduler.priority_first) {
    json s = json::object();
    if (scheduler.algorithm) s["algorithm"] = std::string(to_string(*scheduler.algorithm));
    if (scheduler.priority_first) s["priority_first"] = *scheduler.priority_first;
    doc["scheduler"] = s;
  }
  return doc;
}

}  // namespace dmmm
