// hfs: command-line front end for the harmonic function space toolkit.

#include "hfs/ball.hpp"
#include "hfs/carleson.hpp"
#include "hfs/field.hpp"
#include "hfs/geometry.hpp"
#include "hfs/io.hpp"
#include "hfs/norms.hpp"
#include "hfs/parallel.hpp"
#include "hfs/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using hfs::io::Json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// JSON config files: nested objects select subcommands, arrays give repeated values.
//   {"threads": 1, "verify": {"budget": "smoke"}, "ball": {"functional": {"which": "M"}}}
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool defaults, bool write_desc, std::string prefix) const override {
    return CLI::ConfigTOML().to_config(app, defaults, write_desc, std::move(prefix));
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    Json doc;
    try {
      doc = Json::parse(input);
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError(std::string("config file: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConversionError("config file: top level must be an object");
    std::vector<CLI::ConfigItem> items;
    collect(doc, {}, items);
    return items;
  }

 private:
  static std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return hfs::io::format_double(v.get<double>());
    return v.dump();
  }

  static void collect(const Json& obj, std::vector<std::string> parents, std::vector<CLI::ConfigItem>& items) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (it->is_object()) {
        // Section markers activate configurable subcommands.
        std::vector<std::string> inner = parents;
        inner.push_back(it.key());
        items.push_back({inner, "++", {}});
        collect(*it, inner, items);
        items.push_back({inner, "--", {}});
        continue;
      }
      CLI::ConfigItem item{parents, it.key(), {}};
      if (it->is_array())
        for (const Json& v : *it) item.inputs.push_back(scalar(v));
      else
        item.inputs.push_back(scalar(*it));
      items.push_back(std::move(item));
    }
  }
};

struct Common {
  std::string out;
  int threads = 0;
  bool dry_run = false;
  std::uint64_t seed = 20240601;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

fs::path out_dir(const Common& c) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv("HFS_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "hfs_out";
}

// summary.json: the only file carrying a timestamp.
void write_summary(const Common& c, const std::string& command, const Json& config, const Json& result,
                   const std::vector<std::string>& files) {
  Json doc{{"command", command}, {"timestamp", utc_timestamp()}, {"config", config}, {"result", result},
           {"files", files}};
  hfs::io::write_json_file(out_dir(c) / "summary.json", doc);
}

bool dry_run(const Common& c, const std::string& command, const Json& config) {
  if (!c.dry_run) return false;
  Json doc{{"command", command}, {"out", out_dir(c).string()}, {"threads", c.threads}, {"seed", c.seed},
           {"config", config}};
  std::cout << doc.dump(2) << "\n";
  return true;
}

hfs::Point parse_point(const std::vector<double>& coords) {
  if (coords.size() < 2) throw UsageError("a point needs x coordinates followed by t");
  hfs::Point p;
  p.x.resize(static_cast<Eigen::Index>(coords.size() - 1));
  for (std::size_t i = 0; i + 1 < coords.size(); ++i) p.x(static_cast<Eigen::Index>(i)) = coords[i];
  p.t = coords.back();
  if (!(p.t > 0.0)) throw UsageError("the t coordinate must be positive");
  return p;
}

hfs::Region parse_region(const std::vector<double>& r) {
  if (r.size() != 3) throw UsageError("--region takes x_max,t_min,t_max");
  hfs::Region region{r[0], r[1], r[2]};
  if (!region.valid()) throw UsageError("invalid region " + region.id());
  return region;
}

Json region_json(const hfs::Region& r) { return Json{r.x_max, r.t_min, r.t_max}; }

// ------------------------------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string id;
  std::string budget = "standard";
  std::vector<std::string> set;
  bool list = false;
};

// "--key value", "--key=value" and "key=value" pairs.
Json parse_overrides(const std::vector<std::string>& set, const std::vector<std::string>& extras) {
  Json o = Json::object();
  auto put = [&](std::string key, const std::string& value) {
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    if (key.empty()) throw UsageError("empty parameter name");
    o[key] = value;
  };
  for (const std::string& s : set) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
    put(s.substr(0, eq), s.substr(eq + 1));
  }
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& a = extras[i];
    if (a.rfind("--", 0) != 0) throw UsageError("unexpected argument '" + a + "'");
    const auto eq = a.find('=');
    if (eq != std::string::npos) {
      put(a.substr(0, eq), a.substr(eq + 1));
    } else {
      if (i + 1 >= extras.size()) throw UsageError("missing value for '" + a + "'");
      put(a, extras[++i]);
    }
  }
  return o;
}

int cmd_verify(const Common& c, const VerifyOptions& v, const std::vector<std::string>& extras) {
  namespace hv = hfs::verify;
  if (v.list) {
    for (const hv::Experiment& e : hv::registry()) std::cout << e.id << "  " << e.summary << "\n";
    return kExitPass;
  }
  if (v.id.empty()) throw UsageError("verify: missing experiment id (or 'all')");
  const hv::Budget budget = hv::parse_budget(v.budget);
  const Json overrides = parse_overrides(v.set, extras);

  std::vector<const hv::Experiment*> selected;
  if (v.id == "all") {
    for (const hv::Experiment& e : hv::registry()) selected.push_back(&e);
  } else if (const hv::Experiment* e = hv::find_experiment(v.id)) {
    selected.push_back(e);
  } else {
    throw UsageError("unknown experiment id '" + v.id + "'");
  }

  // With "all", an override applies to every experiment that has the key.
  std::vector<Json> params;
  for (const hv::Experiment* e : selected) {
    Json mine = Json::object();
    const Json defaults = e->defaults(budget);
    for (auto it = overrides.begin(); it != overrides.end(); ++it)
      if (v.id != "all" || defaults.contains(it.key())) mine[it.key()] = it.value();
    params.push_back(hv::resolve_params(*e, budget, mine));
  }
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    bool used = false;
    for (const Json& p : params) used = used || p.contains(it.key());
    if (!used) throw UsageError("no selected experiment has parameter '" + it.key() + "'");
  }

  Json config{{"id", v.id}, {"budget", hv::to_string(budget)}, {"seed", c.seed}, {"overrides", overrides}};
  if (c.dry_run) {
    Json resolved = Json::object();
    for (std::size_t i = 0; i < selected.size(); ++i) resolved[selected[i]->id] = params[i];
    config["params"] = resolved;
  }
  if (dry_run(c, "verify", config)) return kExitPass;

  const fs::path out = out_dir(c);
  std::vector<std::string> files;
  Json results = Json::array();
  bool all_pass = true;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const hv::ExperimentResult r = hv::run_experiment(*selected[i], params[i], {budget, c.seed});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const fs::path& p : hv::write_result(r, out)) files.push_back(p.filename().string());
    int passed = 0;
    for (const hv::Check& ch : r.checks) passed += ch.passed ? 1 : 0;
    all_pass = all_pass && r.passed();
    results.push_back({{"id", r.id}, {"verdict", r.passed() ? "pass" : "fail"}, {"checks_passed", passed},
                       {"checks_total", r.checks.size()}});
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.id << "  " << passed << "/" << r.checks.size() << " checks  "
              << std::fixed << std::setprecision(1) << secs << "s\n";
    for (const hv::Check& ch : r.checks)
      if (!ch.passed)
        std::cout << "    failed: " << ch.name << " value " << ch.value << " " << ch.relation << " " << ch.target
                  << (ch.note.empty() ? "" : "  (" + ch.note + ")") << "\n";
    std::cout.unsetf(std::ios::floatfield);
  }
  write_summary(c, "verify", config, {{"verdict", all_pass ? "pass" : "fail"}, {"experiments", results}}, files);
  return all_pass ? kExitPass : kExitCheckFailure;
}

// ------------------------------------------------------------------------------------------------
// norm

struct NormOptions {
  std::string space = "bergman";
  std::string field = "poisson";
  std::vector<double> pole{0.0, 1.0};
  int n = 1;
  int l = 0;
  double value = 1.0;
  std::string file;
  double p = 2.0, q = 2.0, alpha = 1.0, lambda = 1.0, t = 1.0;
  std::vector<double> region{8.0, 1.0 / 16, 16.0};
  int order = 4;
  std::string layout = "graded";
  int samples = 4096;
  std::vector<double> dilations{1.0};
};

hfs::HarmonicField make_field(const NormOptions& o, const hfs::Point& w) {
  namespace f = hfs::fields;
  if (o.field == "poisson") return f::poisson_slice(w);
  if (o.field == "bergman-q") return f::bergman(o.l, w);
  if (o.field == "test-fn") return f::test_function(w, o.l);
  if (o.field == "zero") return f::zero(o.n);
  if (o.field == "constant") return f::constant(o.n, o.value);
  throw UsageError("unknown field '" + o.field + "' (poisson, bergman-q, test-fn, zero, constant, expansion-file)");
}

double ball_norm(const NormOptions& o, const hfs::ball::SphericalExpansion& f) {
  namespace b = hfs::ball;
  if (o.space == "hardy") return b::hardy_norm(f, o.p);
  if (o.space == "bergman") return b::bergman_norm(f, o.p, o.alpha);
  if (o.space == "sup") return b::sup_norm(f, o.alpha);
  if (o.space == "mixed") return b::mixed_norm(f, o.p, o.q, o.alpha);
  if (o.space == "da") return b::da_norm(f, o.p, o.alpha);
  if (o.space == "db") return b::db_norm(f, o.p, o.q, o.alpha);
  throw UsageError("unknown ball space '" + o.space + "' (hardy, bergman, sup, mixed, da, db)");
}

double halfspace_norm(const NormOptions& o, const hfs::HarmonicField& f, const hfs::Region& region,
                      const hfs::SpatialVector& center, double h0, std::string& budget_id) {
  hfs::QuadratureSpec q;
  q.region = region;
  q.order = o.order;
  if (o.layout == "graded") {
    q.layout = hfs::Layout::graded;
    q.graded_h0 = h0;
    q.center = center;
  } else if (o.layout != "whitney") {
    throw UsageError("--layout must be graded or whitney");
  }
  budget_id = q.id();
  if (o.space == "bergman") return hfs::bergman_norm(f, o.p, o.alpha, q);
  if (o.space == "mixed") return hfs::mixed_norm_B(f, o.p, o.q, o.alpha, q);
  if (o.space == "triebel") return hfs::triebel_norm(f, o.p, o.q, o.alpha, q);
  if (o.space == "slice") return hfs::slice_norm(f, o.p, o.t, q);
  if (o.space == "sup") {
    hfs::SampleSpec s;
    s.region = region;
    s.samples = o.samples;
    budget_id = "samples" + std::to_string(o.samples);
    return hfs::sup_norm_A_infty(f, o.lambda, s);
  }
  throw UsageError("unknown space '" + o.space + "' (bergman, mixed, triebel, slice, sup)");
}

int cmd_norm(const Common& c, const NormOptions& o) {
  Json config{{"space", o.space}, {"field", o.field}, {"p", o.p}, {"q", o.q}, {"alpha", o.alpha}};
  const fs::path out = out_dir(c);
  std::vector<hfs::io::NormRow> rows;

  if (o.field == "expansion-file") {
    if (o.file.empty()) throw UsageError("--field expansion-file needs --file");
    config["file"] = o.file;
    if (dry_run(c, "norm", config)) return kExitPass;
    const auto f = hfs::io::expansion_from_json(hfs::io::read_json_file(o.file));
    rows.push_back({"ball-" + o.space, o.p, o.q, o.alpha, fs::path(o.file).filename().string(), "unit-ball",
                    ball_norm(o, f), "default"});
  } else {
    const hfs::Region region = parse_region(o.region);
    const hfs::Point w = (o.field == "zero" || o.field == "constant") ? hfs::origin_point(o.n, 1.0) : parse_point(o.pole);
    config["pole"] = o.pole;
    config["l"] = o.l;
    config["region"] = region_json(region);
    config["order"] = o.order;
    config["layout"] = o.layout;
    config["dilations"] = o.dilations;
    if (o.space == "sup") config["lambda"] = o.lambda;
    if (o.space == "slice") config["t"] = o.t;
    if (dry_run(c, "norm", config)) return kExitPass;
    // Dilating the pole by k dilates the region and the refinement scale with it.
    for (double k : o.dilations) {
      if (!(k > 0.0)) throw UsageError("dilations must be positive");
      hfs::Point wk = w;
      wk.x *= k;
      wk.t *= k;
      const hfs::Region rk{k * region.x_max, k * region.t_min, k * region.t_max};
      std::string budget;
      const double v = halfspace_norm(o, make_field(o, wk), rk, wk.x, 0.25 * wk.t, budget);
      rows.push_back({o.space, o.p, o.q, o.alpha, o.field + "@k=" + hfs::io::format_double(k), rk.id(), v, budget});
    }
  }
  hfs::io::write_csv(out / "norms.csv", hfs::io::norm_table(rows));
  Json values = Json::array();
  for (const auto& r : rows) {
    std::cout << r.field_id << "  " << hfs::io::format_double(r.value) << "\n";
    values.push_back({{"field", r.field_id}, {"value", r.value}});
  }
  write_summary(c, "norm", config, {{"values", values}}, {"norms.csv"});
  return kExitPass;
}

// ------------------------------------------------------------------------------------------------
// carleson

struct CarlesonOptions {
  std::string measure;
  double weighted_volume = -1.0;
  std::string condition = "T2";
  int n = 2;
  std::vector<double> region{0.5, 1.0 / 256, 4.0};
  int m = 2;
  std::vector<double> s{0.0, 0.0};
  double alpha = 1.0, p = 2.0, q = 2.0;
};

int cmd_carleson(const Common& c, const CarlesonOptions& o) {
  const hfs::Region region = parse_region(o.region);
  Json config{{"condition", o.condition}, {"n", o.n}, {"region", region_json(region)}};
  if (!o.measure.empty()) config["measure"] = o.measure;
  else if (o.weighted_volume > -1.0) config["weighted_volume"] = o.weighted_volume;
  else throw UsageError("carleson: give --measure FILE or --weighted-volume LAMBDA");
  if (o.condition == "T2") config["m"] = o.m, config["s"] = o.s;
  else if (o.condition == "C1") config["alpha"] = o.alpha;
  else if (o.condition == "T3") config["p"] = o.p, config["q"] = o.q, config["alpha"] = o.alpha;
  else if (o.condition == "T4") config["p"] = o.p, config["alpha"] = o.alpha;
  else throw UsageError("--condition must be T2, C1, T3 or T4");
  if (dry_run(c, "carleson", config)) return kExitPass;

  const std::vector<hfs::WhitneyCube> cubes = hfs::whitney_cubes(region, o.n);
  const hfs::AtomicMeasure mu = o.measure.empty() ? hfs::discretize_weighted_volume(cubes, o.weighted_volume)
                                                  : hfs::io::measure_from_json(hfs::io::read_json_file(o.measure));
  if (mu.n != o.n) throw UsageError("measure dimension does not match --n");
  hfs::CarlesonReport rep;
  if (o.condition == "T2") rep = hfs::carleson_constant_T2(mu, cubes, o.m, o.s);
  else if (o.condition == "C1") rep = hfs::carleson_constant_C1(mu, cubes, o.alpha);
  else if (o.condition == "T3") rep = hfs::carleson_constant_T3(mu, cubes, o.p, o.q, o.alpha);
  else rep = hfs::carleson_constant_T4(mu, cubes, o.p, o.alpha);

  const fs::path out = out_dir(c);
  hfs::io::write_csv(out / "carleson.csv", hfs::io::carleson_table(rep));
  std::cout << "cubes " << cubes.size() << "  sup " << hfs::io::format_double(rep.sup) << "  argmax "
            << (rep.argmax.empty() ? "-" : rep.argmax) << "\n";
  write_summary(c, "carleson", config,
                {{"cubes", cubes.size()}, {"total_mass", mu.total_mass()}, {"sup", rep.sup}, {"argmax", rep.argmax}},
                {"carleson.csv"});
  return kExitPass;
}

// ------------------------------------------------------------------------------------------------
// ball

struct BallOptions {
  std::string multiplier;           // expansion file
  std::vector<double> diagonal;     // c_k, j-independent
  bool identity = false;
  int n = 2;
  int K = 16;
  std::vector<std::string> inputs;  // expansion files
  int panel = 10;
  double decay = 0.9;
  std::string target = "hardy";
  std::string which = "N";
  double s = 2.0, beta = 1.0, alpha = 1.0, t = 1.0;
  int m = 1;
  int rho_levels = 12;
  std::string f, g;
};

hfs::ball::MultiplierSequence load_multiplier(const BallOptions& o, Json& config) {
  namespace b = hfs::ball;
  const int sources = (o.multiplier.empty() ? 0 : 1) + (o.diagonal.empty() ? 0 : 1) + (o.identity ? 1 : 0);
  if (sources != 1) throw UsageError("give exactly one of --multiplier FILE, --diagonal LIST, --identity");
  if (!o.multiplier.empty()) {
    config["multiplier"] = o.multiplier;
    return hfs::io::expansion_from_json(hfs::io::read_json_file(o.multiplier));
  }
  std::vector<b::Complex> v;
  if (o.identity) {
    config["multiplier"] = "identity";
    config["K"] = o.K;
    v.assign(static_cast<std::size_t>(o.K + 1), 1.0);
  } else {
    config["diagonal"] = o.diagonal;
    for (double d : o.diagonal) v.emplace_back(d);
  }
  config["n"] = o.n;
  return b::diagonal_multiplier(o.n, v);
}

int cmd_ball_multiplier_check(const Common& c, const BallOptions& o) {
  namespace b = hfs::ball;
  Json config;
  const b::MultiplierSequence mult = load_multiplier(o, config);
  b::InequalityParams params;
  if (o.target == "mixed") params.target = b::MultiplierTarget::mixed;
  else if (o.target != "hardy") throw UsageError("--target must be hardy or mixed");
  params.s = o.s;
  params.beta = o.beta;
  params.alpha = o.alpha;
  params.m = o.m;
  params.rho_levels = o.rho_levels;
  config["target"] = o.target;
  config["s"] = o.s;
  config["beta"] = o.beta;
  if (params.target == b::MultiplierTarget::mixed) config["alpha"] = o.alpha, config["m"] = o.m;
  config["rho_levels"] = o.rho_levels;
  if (o.inputs.empty()) config["panel"] = o.panel, config["decay"] = o.decay;
  else config["inputs"] = o.inputs;
  if (dry_run(c, "ball multiplier-check", config)) return kExitPass;

  std::vector<b::SphericalExpansion> panel;
  for (const std::string& file : o.inputs) panel.push_back(hfs::io::expansion_from_json(hfs::io::read_json_file(file)));
  for (int i = 0; o.inputs.empty() && i < o.panel; ++i)
    panel.push_back(b::SphericalExpansion::random(mult.n, mult.degree(), c.seed + static_cast<std::uint64_t>(i), o.decay));
  const b::InequalityReport rep = b::multiplier_inequality_check(mult, panel, params);

  hfs::io::CsvTable t{{"f", "r", "ratio"}, {}};
  for (std::size_t i = 0; i < rep.ratios.size(); ++i)
    for (std::size_t j = 0; j < rep.ratios[i].size(); ++j)
      t.add_row({std::to_string(i), hfs::io::format_double(1.0 - std::exp2(-static_cast<double>(j))),
                 hfs::io::format_double(rep.ratios[i][j])});
  hfs::io::write_csv(out_dir(c) / "ratios.csv", t);
  std::cout << "functional " << hfs::io::format_double(rep.functional) << "  max ratio "
            << hfs::io::format_double(rep.max_ratio) << "\n";
  write_summary(c, "ball multiplier-check", config, {{"functional", rep.functional}, {"max_ratio", rep.max_ratio}},
                {"ratios.csv"});
  return kExitPass;
}

int cmd_ball_functional(const Common& c, const BallOptions& o) {
  namespace b = hfs::ball;
  Json config;
  const b::MultiplierSequence g = load_multiplier(o, config);
  config["which"] = o.which;
  config["s_conj"] = o.s;
  config["beta"] = o.beta;
  if (o.which != "N") config["alpha"] = o.alpha, config["m"] = o.m;
  config["rho_levels"] = o.rho_levels;
  if (o.which != "N" && o.which != "M" && o.which != "L" && o.which != "K")
    throw UsageError("--which must be N, M, L or K");
  if (dry_run(c, "ball functional", config)) return kExitPass;

  b::FunctionalReport rep;
  if (o.which == "N") rep = b::functional_N(g, o.s, o.beta, o.rho_levels);
  else if (o.which == "M") rep = b::functional_M(g, o.s, o.m, o.alpha, o.beta, o.rho_levels);
  else if (o.which == "L") rep = b::functional_L(g, o.s, o.m, o.alpha, o.beta, o.rho_levels);
  else rep = b::functional_K(g, o.s, o.m, o.alpha, o.beta, o.rho_levels);
  hfs::io::write_csv(out_dir(c) / "functional.csv", hfs::io::functional_table(rep));
  std::cout << o.which << " " << hfs::io::format_double(rep.value) << "  trend slope "
            << hfs::io::format_double(rep.trend_slope) << (rep.likely_infinite ? "  likely infinite" : "") << "\n";
  write_summary(c, "ball functional", config,
                {{"value", rep.value}, {"argmax_rho", rep.argmax_rho}, {"trend_slope", rep.trend_slope},
                 {"likely_infinite", rep.likely_infinite}},
                {"functional.csv"});
  return kExitPass;
}

hfs::ball::SphericalExpansion load_or_random(const std::string& file, const BallOptions& o, std::uint64_t seed) {
  if (!file.empty()) return hfs::io::expansion_from_json(hfs::io::read_json_file(file));
  return hfs::ball::SphericalExpansion::random(o.n, o.K, seed, o.decay);
}

int cmd_ball_lambda(const Common& c, const BallOptions& o) {
  Json config{{"t", o.t}};
  if (o.f.empty()) config["random"] = {{"n", o.n}, {"K", o.K}, {"decay", o.decay}};
  else config["f"] = o.f;
  if (dry_run(c, "ball lambda", config)) return kExitPass;
  const auto f = load_or_random(o.f, o, c.seed);
  const auto h = hfs::ball::fractional_derivative(o.t, f);
  hfs::io::write_json_file(out_dir(c) / "lambda.json", hfs::io::to_json(h));
  std::cout << "wrote lambda.json (degree " << h.degree() << ")\n";
  write_summary(c, "ball lambda", config, {{"degree", h.degree()}}, {"lambda.json"});
  return kExitPass;
}

int cmd_ball_convolve(const Common& c, const BallOptions& o) {
  Json config;
  config["f"] = o.f.empty() ? Json("random") : Json(o.f);
  config["g"] = o.g.empty() ? Json("random") : Json(o.g);
  if (o.f.empty() || o.g.empty()) config["random"] = {{"n", o.n}, {"K", o.K}, {"decay", o.decay}};
  if (dry_run(c, "ball convolve", config)) return kExitPass;
  const auto f = load_or_random(o.f, o, c.seed);
  const auto g = load_or_random(o.g, o, c.seed + 1);
  const auto h = hfs::ball::convolve(f, g);
  hfs::io::write_json_file(out_dir(c) / "convolve.json", hfs::io::to_json(h));
  std::cout << "wrote convolve.json (degree " << h.degree() << ")\n";
  write_summary(c, "ball convolve", config, {{"degree", h.degree()}}, {"convolve.json"});
  return kExitPass;
}

// ------------------------------------------------------------------------------------------------
// whitney

struct WhitneyOptions {
  int n = 1;
  std::vector<double> region{1.0, 0.25, 4.0};
  int samples = 0;
};

int cmd_whitney(const Common& c, const WhitneyOptions& o) {
  const hfs::Region region = parse_region(o.region);
  Json config{{"n", o.n}, {"region", region_json(region)}, {"samples", o.samples}};
  if (o.n < 1 || o.n > hfs::kMaxSpatialDim) throw UsageError("--n out of range");
  if (dry_run(c, "whitney", config)) return kExitPass;
  const auto cubes = hfs::whitney_cubes(region, o.n);
  const fs::path out = out_dir(c);
  hfs::io::write_json_file(out / "cubes.json", hfs::io::to_json(cubes));
  hfs::io::CsvTable t{{"id", "level", "side", "eta", "diameter"}, {}};
  for (const auto& q : cubes)
    t.add_row({q.id(), std::to_string(q.level), hfs::io::format_double(q.side()), hfs::io::format_double(q.eta()),
               hfs::io::format_double(q.diameter())});
  hfs::io::write_csv(out / "cubes.csv", t);
  Json result{{"cubes", cubes.size()}};
  if (o.samples > 0) result["empirical_overlap_max"] = hfs::empirical_overlap_max(region, o.n, o.samples, c.seed);
  std::cout << result.dump() << "\n";
  write_summary(c, "whitney", config, result, {"cubes.json", "cubes.csv"});
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted harmonic function spaces on the half-space and the unit ball"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON configuration; explicit flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_extras();  // parameter overrides reaching the root from verify

  Common common;
  app.add_option("--out", common.out, "Output directory (default $HFS_OUT_DIR or ./hfs_out)");
  app.add_option("--threads", common.threads, "Worker cap (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", common.seed, "Seed for randomized panels");
  app.add_flag("--dry-run", common.dry_run, "Print the resolved configuration and exit");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run a registered experiment, or 'all'");
  verify->add_option("id", vo.id, "Experiment id or 'all'");
  verify->add_option("--budget", vo.budget, "smoke | standard | deep");
  verify->add_option("--set", vo.set, "Parameter override key=value (repeatable); '--key value' also works");
  verify->add_flag("--list", vo.list, "List experiment ids");
  verify->allow_extras();
  verify->configurable();

  NormOptions no;
  auto* norm = app.add_subcommand("norm", "Norm of a builtin field or a ball expansion");
  norm->add_option("--space", no.space,
                   "Half-space: bergman, mixed, triebel, slice, sup. Ball (with expansion-file): hardy, bergman, "
                   "sup, mixed, da, db");
  norm->add_option("--field", no.field, "poisson, bergman-q, test-fn, zero, constant, expansion-file");
  norm->add_option("--pole", no.pole, "Pole w as x_1,...,x_n,s")->delimiter(',');
  norm->add_option("--n", no.n, "Spatial dimension for zero/constant fields");
  norm->add_option("--l", no.l, "Kernel order l");
  norm->add_option("--value", no.value, "Value of the constant field");
  norm->add_option("--file", no.file, "Expansion JSON for expansion-file");
  norm->add_option("--p", no.p, "Exponent p (inf allowed for mixed)");
  norm->add_option("--q", no.q, "Exponent q");
  norm->add_option("--alpha", no.alpha, "Weight exponent alpha");
  norm->add_option("--lambda", no.lambda, "A^infty weight exponent");
  norm->add_option("--t", no.t, "Slice height for the slice norm");
  norm->add_option("--region", no.region, "Truncation x_max,t_min,t_max")->delimiter(',');
  norm->add_option("--order", no.order, "Gauss order per cell");
  norm->add_option("--layout", no.layout, "graded | whitney");
  norm->add_option("--samples", no.samples, "Samples for the sup norm");
  norm->add_option("--dilations", no.dilations, "Scaling table: pole and region dilated by each k")->delimiter(',');
  norm->configurable();

  CarlesonOptions co;
  auto* carleson = app.add_subcommand("carleson", "Carleson constants of a measure over Whitney cubes");
  carleson->add_option("--measure", co.measure, "Measure JSON {atoms: [{x, t, w}]}");
  carleson->add_option("--weighted-volume", co.weighted_volume, "Use the discretized t^lambda dx dt instead");
  carleson->add_option("--condition", co.condition, "T2, C1, T3 or T4");
  carleson->add_option("--n", co.n, "Spatial dimension");
  carleson->add_option("--region", co.region, "Cube region x_max,t_min,t_max")->delimiter(',');
  carleson->add_option("--m", co.m, "T2: number of variables");
  carleson->add_option("--s", co.s, "T2: weights s_1,...,s_m")->delimiter(',');
  carleson->add_option("--alpha", co.alpha, "C1/T3/T4 exponent alpha");
  carleson->add_option("--p", co.p, "T3/T4 exponent p");
  carleson->add_option("--q", co.q, "T3 exponent q");
  carleson->configurable();

  BallOptions bo;
  auto* ball = app.add_subcommand("ball", "Multiplier arithmetic on the unit ball");
  ball->require_subcommand(1);
  ball->fallthrough();
  ball->configurable();
  auto add_multiplier = [&](CLI::App* s) {
    s->add_option("--multiplier", bo.multiplier, "Multiplier expansion JSON");
    s->add_option("--diagonal", bo.diagonal, "Diagonal multiplier c_0,c_1,...")->delimiter(',');
    s->add_flag("--identity", bo.identity, "c = 1 up to degree K");
    s->add_option("--n", bo.n, "Dimension (2 or 3)");
    s->add_option("--K", bo.K, "Degree cap");
    s->add_option("--beta", bo.beta, "Target weight beta");
    s->add_option("--alpha", bo.alpha, "Source exponent alpha");
    s->add_option("--m", bo.m, "Derivative order m");
    s->add_option("--rho-levels", bo.rho_levels, "rho grid 1 - 2^-i, i <= levels");
    s->configurable();
  };
  auto* mcheck = ball->add_subcommand("multiplier-check", "Sufficiency ratio table over an input panel");
  add_multiplier(mcheck);
  mcheck->add_option("--input", bo.inputs, "Input expansion JSON (repeatable; default: random panel)");
  mcheck->add_option("--panel", bo.panel, "Random panel size");
  mcheck->add_option("--decay", bo.decay, "Random coefficient decay");
  mcheck->add_option("--target", bo.target, "hardy | mixed");
  mcheck->add_option("--s", bo.s, "Hardy exponent s (hardy) or q (mixed)");
  auto* functional = ball->add_subcommand("functional", "Evaluate N, M, L or K on a rho grid");
  add_multiplier(functional);
  functional->add_option("--which", bo.which, "N | M | L | K");
  functional->add_option("--s-conj", bo.s, "Conjugate exponent of the slice integral");
  auto* lambda = ball->add_subcommand("lambda", "Fractional derivative of an expansion");
  lambda->add_option("--t", bo.t, "Order t");
  lambda->add_option("--f", bo.f, "Expansion JSON (default: random)");
  lambda->add_option("--n", bo.n, "Dimension of the random input");
  lambda->add_option("--K", bo.K, "Degree of the random input");
  lambda->add_option("--decay", bo.decay, "Random coefficient decay");
  lambda->configurable();
  auto* conv = ball->add_subcommand("convolve", "Coefficientwise product of two expansions");
  conv->add_option("--f", bo.f, "First expansion JSON (default: random)");
  conv->add_option("--g", bo.g, "Second expansion JSON (default: random)");
  conv->add_option("--n", bo.n, "Dimension of random inputs");
  conv->add_option("--K", bo.K, "Degree of random inputs");
  conv->add_option("--decay", bo.decay, "Random coefficient decay");
  conv->configurable();

  WhitneyOptions wo;
  auto* whitney = app.add_subcommand("whitney", "List the Whitney cubes of a region");
  whitney->add_option("--n", wo.n, "Spatial dimension");
  whitney->add_option("--region", wo.region, "x_max,t_min,t_max")->delimiter(',');
  whitney->add_option("--samples", wo.samples, "Random points for the empirical overlap maximum");
  whitney->configurable();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    hfs::set_thread_limit(common.threads);
    std::vector<std::string> extras = verify->remaining();
    for (const std::string& a : app.remaining()) extras.push_back(a);
    if (*verify) return cmd_verify(common, vo, extras);
    if (!extras.empty()) throw UsageError("unexpected argument '" + extras.front() + "'");
    if (*norm) return cmd_norm(common, no);
    if (*carleson) return cmd_carleson(common, co);
    if (*whitney) return cmd_whitney(common, wo);
    if (*mcheck) return cmd_ball_multiplier_check(common, bo);
    if (*functional) return cmd_ball_functional(common, bo);
    if (*lambda) return cmd_ball_lambda(common, bo);
    if (*conv) return cmd_ball_convolve(common, bo);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const hfs::verify::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
