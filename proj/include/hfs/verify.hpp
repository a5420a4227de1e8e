#pragma once

#include "hfs/io.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hfs::verify {

using io::Json;

enum class Budget { smoke, standard, deep };

/// Throws UsageError for anything but "smoke", "standard", "deep".
Budget parse_budget(std::string_view name);
std::string to_string(Budget b);

/// Bad experiment id, unknown parameter key, or malformed value.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One asserted comparison. relation is one of "<=", ">=", "~" (|value - target| <= tolerance)
/// or "true".
struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;
  double target = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

Check check_le(std::string name, double value, double bound, std::string note = {});
Check check_ge(std::string name, double value, double bound, std::string note = {});
Check check_near(std::string name, double value, double target, double tolerance, std::string note = {});
Check check_true(std::string name, bool ok, std::string note = {});

struct Artifact {
  std::string name;
  io::CsvTable table;
};

struct ExperimentResult {
  std::string id;
  Json params;
  std::vector<Check> checks;
  Json fitted_constants = Json::object();
  std::vector<Artifact> artifacts;

  bool passed() const;
  /// {id, params, verdict, checks[], fitted_constants, artifacts[]}
  Json to_json() const;
};

struct RunContext {
  Budget budget = Budget::standard;
  std::uint64_t seed = 20240601;
};

struct Experiment {
  std::string id;
  std::string summary;
  std::function<Json(Budget)> defaults;
  std::function<void(const Json& params, const RunContext& ctx, ExperimentResult& out)> run;
};

/// All experiments, in a fixed order.
const std::vector<Experiment>& registry();
/// nullptr for an unknown id.
const Experiment* find_experiment(std::string_view id);

/// Defaults for the budget, overridden key by key. Override values may be JSON values or
/// strings, which are converted to the default's type. Throws UsageError for unknown keys.
Json resolve_params(const Experiment& e, Budget budget, const Json& overrides);

/// Runs with resolved parameters; an exception inside the experiment becomes a failed check.
ExperimentResult run_experiment(const Experiment& e, const Json& params, const RunContext& ctx);

/// Writes <out>/<id>.json and <out>/<id>_<artifact>.csv; returns the written paths.
std::vector<std::filesystem::path> write_result(const ExperimentResult& r, const std::filesystem::path& out);

/// Accessors for resolved parameter objects.
double num(const Json& params, const char* key);
int integer(const Json& params, const char* key);
std::vector<double> numbers(const Json& params, const char* key);

std::vector<Experiment> halfspace_experiments();
std::vector<Experiment> embedding_experiments();
std::vector<Experiment> operator_experiments();
std::vector<Experiment> ball_experiments();

}  // namespace hfs::verify
