#include "hfs/verify.hpp"

#include <cmath>
#include <exception>

namespace hfs::verify {

Budget parse_budget(std::string_view name) {
  if (name == "smoke") return Budget::smoke;
  if (name == "standard") return Budget::standard;
  if (name == "deep") return Budget::deep;
  throw UsageError("unknown budget '" + std::string(name) + "' (smoke | standard | deep)");
}

std::string to_string(Budget b) {
  switch (b) {
    case Budget::smoke: return "smoke";
    case Budget::standard: return "standard";
    case Budget::deep: return "deep";
  }
  return "standard";
}

Check check_le(std::string name, double value, double bound, std::string note) {
  return {std::move(name), value, "<=", bound, 0.0, value <= bound, std::move(note)};
}

Check check_ge(std::string name, double value, double bound, std::string note) {
  return {std::move(name), value, ">=", bound, 0.0, value >= bound, std::move(note)};
}

Check check_near(std::string name, double value, double target, double tolerance, std::string note) {
  return {std::move(name), value, "~", target, tolerance, std::abs(value - target) <= tolerance, std::move(note)};
}

Check check_true(std::string name, bool ok, std::string note) {
  return {std::move(name), ok ? 1.0 : 0.0, "true", 1.0, 0.0, ok, std::move(note)};
}

bool ExperimentResult::passed() const {
  if (checks.empty()) return false;
  for (const Check& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

Json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

Json ExperimentResult::to_json() const {
  Json checks_json = Json::array();
  for (const Check& c : checks) {
    Json j{{"name", c.name}, {"value", finite_or_string(c.value)}, {"relation", c.relation},
           {"target", finite_or_string(c.target)}};
    if (c.relation == "~") j["tolerance"] = c.tolerance;
    j["passed"] = c.passed;
    if (!c.note.empty()) j["note"] = c.note;
    checks_json.push_back(std::move(j));
  }
  Json artifacts_json = Json::array();
  for (const Artifact& a : artifacts) artifacts_json.push_back(id + "_" + a.name + ".csv");
  return {{"id", id},
          {"params", params},
          {"verdict", passed() ? "pass" : "fail"},
          {"checks", checks_json},
          {"fitted_constants", fitted_constants},
          {"artifacts", artifacts_json}};
}

const std::vector<Experiment>& registry() {
  static const std::vector<Experiment> all = [] {
    std::vector<Experiment> v;
    for (auto group : {halfspace_experiments, embedding_experiments, operator_experiments, ball_experiments})
      for (Experiment& e : group()) v.push_back(std::move(e));
    return v;
  }();
  return all;
}

const Experiment* find_experiment(std::string_view id) {
  for (const Experiment& e : registry())
    if (e.id == id) return &e;
  return nullptr;
}

namespace {

Json convert_like(const Json& like, const Json& value, const std::string& key) {
  if (!value.is_string() || like.is_string()) return value;
  const std::string s = value.get<std::string>();
  try {
    if (like.is_boolean()) {
      if (s == "true" || s == "1") return true;
      if (s == "false" || s == "0") return false;
      throw UsageError("");
    }
    if (like.is_number_integer()) {
      std::size_t pos = 0;
      const long long v = std::stoll(s, &pos);
      if (pos != s.size()) throw UsageError("");
      return v;
    }
    if (like.is_number()) {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw UsageError("");
      return v;
    }
    if (like.is_array()) {
      Json arr = Json::array();
      std::size_t start = 0;
      while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        arr.push_back(convert_like(like.empty() ? Json(0.0) : like[0], Json(item), key));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      return arr;
    }
  } catch (const std::exception&) {
  }
  throw UsageError("parameter '" + key + "': cannot parse '" + s + "'");
}

}  // namespace

Json resolve_params(const Experiment& e, Budget budget, const Json& overrides) {
  Json p = e.defaults(budget);
  if (overrides.is_null()) return p;
  if (!overrides.is_object()) throw UsageError("parameter overrides must be an object");
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    if (!p.contains(it.key())) throw UsageError("experiment '" + e.id + "' has no parameter '" + it.key() + "'");
    p[it.key()] = convert_like(p[it.key()], it.value(), it.key());
  }
  return p;
}

ExperimentResult run_experiment(const Experiment& e, const Json& params, const RunContext& ctx) {
  ExperimentResult r;
  r.id = e.id;
  r.params = params;
  try {
    e.run(params, ctx, r);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& ex) {
    r.checks.push_back(check_true("completed", false, ex.what()));
  }
  return r;
}

std::vector<std::filesystem::path> write_result(const ExperimentResult& r, const std::filesystem::path& out) {
  std::vector<std::filesystem::path> written;
  const auto json_path = out / (r.id + ".json");
  io::write_json_file(json_path, r.to_json());
  written.push_back(json_path);
  for (const Artifact& a : r.artifacts) {
    const auto csv = out / (r.id + "_" + a.name + ".csv");
    io::write_csv(csv, a.table);
    written.push_back(csv);
  }
  return written;
}

double num(const Json& params, const char* key) {
  if (!params.contains(key) || !params[key].is_number()) throw UsageError(std::string("missing numeric parameter ") + key);
  return params[key].get<double>();
}

int integer(const Json& params, const char* key) {
  const double v = num(params, key);
  if (v != std::floor(v)) throw UsageError(std::string("parameter ") + key + " must be an integer");
  return static_cast<int>(v);
}

std::vector<double> numbers(const Json& params, const char* key) {
  if (!params.contains(key) || !params[key].is_array()) throw UsageError(std::string("missing list parameter ") + key);
  return params[key].get<std::vector<double>>();
}

}  // namespace hfs::verify
