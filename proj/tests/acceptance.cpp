// Acceptance runner: one PASS/FAIL line per criterion.
//
//   hfs_acceptance <1..8 | all> [--cli PATH]
//
// Experiments run at the standard budget with a fixed seed and pinned parameters. Every
// threshold below is asserted here against the reported values, independently of the
// verdict an experiment assigns to its own checks.

#include "hfs/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace hfs::verify;
using hfs::io::Json;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string num_str(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

class Runner {
 public:
  ExperimentResult run(const std::string& id, const Json& overrides) {
    const Experiment* e = find_experiment(id);
    if (!e) throw std::runtime_error("unknown experiment " + id);
    const Json params = resolve_params(*e, Budget::standard, overrides);
    return run_experiment(*e, params, {Budget::standard, kSeed});
  }
};

const Check* find_check(const ExperimentResult& r, const std::string& name) {
  for (const Check& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

// value <= bound, with the bound pinned here.
void le(Outcome& o, const ExperimentResult& r, const std::string& name, double bound) {
  const Check* c = find_check(r, name);
  if (!c) return o.require(false, r.id + ": missing check " + name);
  o.require(c->value <= bound, r.id + ": " + name + " = " + num_str(c->value) + " > " + num_str(bound));
}

void ge(Outcome& o, const ExperimentResult& r, const std::string& name, double bound) {
  const Check* c = find_check(r, name);
  if (!c) return o.require(false, r.id + ": missing check " + name);
  o.require(c->value >= bound, r.id + ": " + name + " = " + num_str(c->value) + " < " + num_str(bound));
}

void is_true(Outcome& o, const ExperimentResult& r, const std::string& name) {
  const Check* c = find_check(r, name);
  if (!c) return o.require(false, r.id + ": missing check " + name);
  o.require(c->relation == "true" && c->value == 1.0, r.id + ": " + name + " is false");
}

const hfs::io::CsvTable* artifact(const ExperimentResult& r, const std::string& name) {
  for (const Artifact& a : r.artifacts)
    if (a.name == name) return &a.table;
  return nullptr;
}

std::size_t column(const hfs::io::CsvTable& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  if (it == t.columns.end()) throw std::runtime_error("missing column " + name);
  return static_cast<std::size_t>(it - t.columns.begin());
}

// ---------------------------------------------------------------------------------------------

void criterion1(Runner& run, Outcome& o) {
  const ExperimentResult r =
      run.run("whitney", Json{{"dims", {1, 2}}, {"level_lo", -4}, {"level_hi", 4}, {"lambdas", {0.0, 1.0, -0.5, 2.5}}});
  for (int n : {1, 2}) {
    const std::string tag = "n" + std::to_string(n) + ".";
    le(o, r, tag + "interior_overlap_volume", 0.0);
    le(o, r, tag + "uncovered_points", 0.0);
    le(o, r, tag + "diam_over_dist_error", 1e-12);
    le(o, r, tag + "overlap_max", 4.0);
    for (const char* lam : {"lambda0", "lambda1", "lambda-0.5", "lambda2.5"})
      le(o, r, tag + "measure_ratio_spread." + lam, 1e-12);
  }
}

void criterion2(Runner& run, Outcome& o) {
  const ExperimentResult r = run.run("kernels", Json{{"l_max", 4}});
  le(o, r, "harmonicity.order_deviation", 0.25);
  le(o, r, "closed_form_vs_fd.max_relative_error", 1e-6);
  le(o, r, "poisson.normalization_error", 1e-4);
}

// Least-squares slope of the refined log-log table, the dyadic span it covers, and the
// exponent fit checks against an independently computed target.
void slope_fit(Outcome& o, const ExperimentResult& r, const std::string& name, double expected) {
  const hfs::io::CsvTable* t = artifact(r, name);
  if (!t) return o.require(false, r.id + ": missing artifact " + name);
  const std::size_t cg = column(*t, "grid"), cx = column(*t, "log_x"), cy = column(*t, "log_y");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, lo = INFINITY, hi = -INFINITY;
  int m = 0;
  for (const auto& row : t->rows) {
    if (row[cg] != "refined") continue;
    const double x = std::stod(row[cx]), y = std::stod(row[cy]);
    sx += x, sy += y, sxx += x * x, sxy += x * y, ++m;
    lo = std::min(lo, x), hi = std::max(hi, x);
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double decades = (hi - lo) / std::log(2.0);
  o.require(decades >= 4.0 - 1e-9, r.id + ": " + name + " spans " + num_str(decades) + " dyadic decades");
  o.require(std::abs(slope - expected) <= 0.1,
            r.id + ": " + name + " refit slope " + num_str(slope) + " vs " + num_str(expected));
  const Check* c = find_check(r, name + ".slope");
  if (!c) return o.require(false, r.id + ": missing check " + name + ".slope");
  o.require(std::abs(c->value - expected) <= 0.1,
            r.id + ": " + name + ".slope " + num_str(c->value) + " vs " + num_str(expected));
  o.require(std::abs(c->value - slope) <= 1e-9, r.id + ": " + name + ".slope disagrees with its own table");
  const Check* d = find_check(r, name + ".drift");
  if (!d) return o.require(false, r.id + ": missing check " + name + ".drift");
  o.require(d->value < 0.05, r.id + ": " + name + ".drift = " + num_str(d->value));
}

void criterion3(Runner& run, Outcome& o) {
  {
    const int n = 1;
    const double delta = 0.0, gamma = 3.0;
    const ExperimentResult r = run.run("lemma4", Json{{"n", n}, {"delta", delta}, {"gamma", gamma}, {"tolerance", 0.1}});
    slope_fit(o, r, "lemma4", delta - gamma + n + 1);
  }
  {
    const int n = 1;
    const double alpha = 0.0, gamma = 2.0;
    const ExperimentResult r = run.run("lemma5", Json{{"n", n}, {"alpha", alpha}, {"gamma", gamma}, {"tolerance", 0.1}});
    slope_fit(o, r, "lemma5", alpha + n + 1 - 2 * gamma);
  }
  {
    // M_p(f_{w,l}, t) decays like (t + s)^{n/p - (n - 1 + l)}.
    const int n = 3, l = 1;
    const double p = 2.0;
    const ExperimentResult r = run.run("eq14", Json{{"n", n}, {"l", l}, {"p", p}, {"tolerance", 0.1}});
    slope_fit(o, r, "eq14", n / p - (n - 1.0 + l));
  }
  {
    // The mixed norm of f_{(0,s),l} scales like s^{n/p - (n - 1 + l) + alpha}, and the
    // p-th power of the A^p_a norm of f_{w,0} like s^{a + n + 1 - p(n - 1)}.
    const int n = 2, l = 1;
    const double p = 2.0, alpha = 0.5, bp = 4.0, ba = 0.5;
    const ExperimentResult r = run.run("eq15", Json{{"n", n}, {"l", l}, {"p", p}, {"q", 4.0}, {"alpha", alpha},
                                                     {"bergman_p", bp}, {"bergman_alpha", ba}, {"tolerance", 0.1}});
    slope_fit(o, r, "eq15", n / p - (n - 1.0 + l) + alpha);
    slope_fit(o, r, "bergman_scaling", ba + n + 1.0 - bp * (n - 1.0));
  }
  {
    const int n = 2, l = 3;
    const double p = 2.0, alpha = 2.0;
    const ExperimentResult r =
        run.run("thm4-scaling", Json{{"n", n}, {"l", l}, {"p", p}, {"alpha", alpha}, {"tolerance", 0.1}});
    slope_fit(o, r, "thm4_scaling", n - p * (n - 1.0 + l - alpha));
  }
}

void criterion4(Runner& run, Outcome& o) {
  const ExperimentResult r = run.run("thm5-reproduce", Json{{"n", 3}, {"m", {1, 2}}, {"points", 20}});
  le(o, r, "round_trip.m1", 0.02);
  le(o, r, "round_trip.m2", 0.02);
}

void criterion5(Runner& run, Outcome& o) {
  const ExperimentResult r = run.run("carleson-panel", Json{{"growth_threshold", 10.0}});
  le(o, r, "classification.disagreements", 0.0);
  le(o, r, "classification.misclassified", 0.0);
  ge(o, r, "violating.min_growth", 10.0);
  const hfs::io::CsvTable* t = artifact(r, "summary");
  if (!t) return o.require(false, "carleson-panel: missing summary table");
  const std::size_t cm = column(*t, "measure"), cc = column(*t, "condition"), ce = column(*t, "expected"),
                    ccar = column(*t, "carleson_class"), cemb = column(*t, "embedding_class"),
                    cgs = column(*t, "sequence_growth"), cge = column(*t, "embedding_growth");
  std::set<std::string> measures, conditions;
  for (const auto& row : t->rows) {
    measures.insert(row[cm]);
    conditions.insert(row[cc]);
    const std::string who = row[cm] + "/" + row[cc];
    o.require(row[ccar] == row[ce] && row[cemb] == row[ce], "carleson-panel: " + who + " misclassified");
    if (row[ce] == "violating") {
      o.require(std::stod(row[cgs]) >= 10.0, "carleson-panel: " + who + " Carleson growth " + row[cgs]);
      o.require(std::stod(row[cge]) >= 10.0, "carleson-panel: " + who + " embedding growth " + row[cge]);
    }
  }
  o.require(measures.size() == 6, "carleson-panel: panel has " + std::to_string(measures.size()) + " measures");
  o.require(conditions.size() == 4, "carleson-panel: " + std::to_string(conditions.size()) + " conditions");
}

void criterion6(Runner& run, Outcome& o) {
  const std::vector<double> grid{2.0, 1.6, 1.3, 1.1, 0.9, 0.7, 0.55, 0.45, 0.3};
  const ExperimentResult r = run.run("thm7", Json{{"eps_grid", grid}});
  le(o, r, "split.reconstruction", 1e-3);
  is_true(o, r, "split.C_finite");
  le(o, r, "split.C_stability", 0.1);

  const hfs::io::CsvTable* t = artifact(r, "split");
  if (!t) {
    o.require(false, "thm7: missing split table");
  } else {
    std::set<std::string> configs;
    const std::size_t cc = column(*t, "config"), cf = column(*t, "f1_over_eps");
    for (const auto& row : t->rows) {
      configs.insert(row[cc]);
      o.require(std::isfinite(std::stod(row[cf])), "thm7: f1/eps not finite for " + row[cc]);
    }
    o.require(configs.size() == 5, "thm7: " + std::to_string(configs.size()) + " split configurations");
  }

  // One grid step around 1: the gap between the grid values bracketing 1.
  double below = -INFINITY, above = INFINITY;
  for (double e : grid) {
    if (e <= 1.0) below = std::max(below, e);
    if (e >= 1.0) above = std::min(above, e);
  }
  const Check* d2 = find_check(r, "d2.profile");
  if (!d2) return o.require(false, "thm7: missing check d2.profile");
  o.require(std::abs(d2->value - 1.0) <= above - below,
            "thm7: d2 of t^-lambda = " + num_str(d2->value) + " not within one grid step of 1");
}

void criterion7(Runner& run, Outcome& o) {
  const ExperimentResult b = run.run("ball", Json{{"gram_K", 8}, {"poisson_r", 0.5}, {"reproducing_K", 16}});
  le(o, b, "gram.n2", 1e-8);
  le(o, b, "gram.n3", 1e-8);
  le(o, b, "poisson_partial_sum.n2", 1e-6);
  le(o, b, "poisson_partial_sum.n3", 1e-6);
  le(o, b, "reproducing_identity", 1e-4);
  le(o, b, "da_equals_db.ratio_error", 1e-3);

  const ExperimentResult t = run.run("thm8_9", Json{{"K", 16}});
  for (const char* thm : {"thm8", "thm9"}) {
    const std::string s(thm);
    is_true(o, t, s + ".K16.finite");
    is_true(o, t, s + ".K32.finite");
    for (const char* K : {".K16.max_ratio", ".K32.max_ratio"}) {
      const Check* c = find_check(t, s + K);
      o.require(c && std::isfinite(c->value), "thm8_9: " + s + K + " not finite");
    }
    le(o, t, s + ".K_stability", 0.05);
    le(o, t, s + ".K_stability_interior", 0.05);
  }
}

// Runs the CLI in dir; returns the exit status.
int run_cli(const std::string& cli, const fs::path& dir) {
  const std::string cmd = "cd \"" + dir.string() + "\" && \"" + cli + "\" --seed " + std::to_string(kSeed) +
                          " verify all --budget smoke --out out > log.txt 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion8(const std::string& cli_arg, Outcome& o) {
  if (cli_arg.empty()) return o.require(false, "no --cli path given");
  const std::string cli = fs::absolute(cli_arg).string();
  const fs::path root = fs::temp_directory_path() / ("hfs_acceptance_c8_" + std::to_string(::getpid()));
  fs::remove_all(root);
  std::map<std::string, std::string> files[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path dir = root / (i ? "b" : "a");
    fs::create_directories(dir);
    const int code = run_cli(cli, dir);
    o.require(code == 0 || code == 1, "run " + std::to_string(i + 1) + " exited with " + std::to_string(code));
    if (!fs::exists(dir / "out")) continue;
    for (const auto& entry : fs::directory_iterator(dir / "out"))
      files[i][entry.path().filename().string()] = slurp(entry.path());
  }
  fs::remove_all(root);
  o.require(!files[0].empty(), "no report files written");
  o.require(files[0].size() == files[1].size(), "runs wrote different file sets");
  for (const auto& [name, bytes] : files[0]) {
    const auto it = files[1].find(name);
    if (it == files[1].end()) {
      o.require(false, name + " missing from the second run");
      continue;
    }
    if (name == "summary.json") {
      Json a = Json::parse(bytes), b = Json::parse(it->second);
      o.require(a.contains("timestamp"), "summary.json has no timestamp");
      a.erase("timestamp");
      b.erase("timestamp");
      o.require(a.dump() == b.dump(), "summary.json differs outside the timestamp");
    } else {
      o.require(bytes == it->second, name + " differs");
    }
  }
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
};

const Criterion kCriteria[] = {{1, "Whitney suite", 10},     {2, "kernel suite", 30},       {3, "exponent fits", 120},
                               {4, "reproducing round trip", 120}, {5, "Carleson panel", 120}, {6, "distance suite", 180},
                               {7, "ball suite", 180},       {8, "determinism", 300}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string which = "all", cli;
  app.add_option("criterion", which, "1..8 or all");
  app.add_option("--cli", cli, "Path of the hfs executable (criterion 8)");
  CLI11_PARSE(app, argc, argv);

  Runner run;
  bool all_ok = true;
  for (const Criterion& c : kCriteria) {
    if (which != "all" && which != std::to_string(c.id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      switch (c.id) {
        case 1: criterion1(run, o); break;
        case 2: criterion2(run, o); break;
        case 3: criterion3(run, o); break;
        case 4: criterion4(run, o); break;
        case 5: criterion5(run, o); break;
        case 6: criterion6(run, o); break;
        case 7: criterion7(run, o); break;
        case 8: criterion8(cli, o); break;
      }
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.limit_s, "runtime " + num_str(secs) + " s exceeds " + num_str(c.limit_s) + " s");
    const bool ok = o.failures.empty();
    all_ok = all_ok && ok;
    std::cout << "criterion " << c.id << ' ' << (ok ? "PASS" : "FAIL") << ' ' << c.title << " (" << std::fixed
              << std::setprecision(1) << secs << " s)\n";
    std::cout.unsetf(std::ios::fixed);
    for (const std::string& f : o.failures) std::cout << "    " << f << '\n';
  }
  return all_ok ? 0 : 1;
}
