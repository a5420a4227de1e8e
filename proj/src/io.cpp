#include "hfs/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hfs::io {

Json to_json(const WhitneyCube& cube) {
  Json j;
  j["level"] = cube.level;
  j["index"] = Json::array();
  for (Eigen::Index i = 0; i < cube.index.size(); ++i) j["index"].push_back(cube.index(i));
  const Point c = cube.center();
  j["center"] = Json::array();
  for (Eigen::Index i = 0; i < c.x.size(); ++i) j["center"].push_back(c.x(i));
  j["center"].push_back(c.t);
  j["side"] = cube.side();
  return j;
}

Json to_json(std::span<const WhitneyCube> cubes) {
  Json j = Json::array();
  for (const WhitneyCube& c : cubes) j.push_back(to_json(c));
  return j;
}

Json to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const Atom& a : mu.atoms) {
    Json x = Json::array();
    for (Eigen::Index i = 0; i < a.z.x.size(); ++i) x.push_back(a.z.x(i));
    atoms.push_back({{"x", x}, {"t", a.z.t}, {"w", a.weight}});
  }
  return {{"n", mu.n}, {"atoms", atoms}};
}

AtomicMeasure measure_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("atoms") || !doc["atoms"].is_array())
    throw std::invalid_argument("measure: expected an object with an 'atoms' array");
  AtomicMeasure mu;
  mu.n = doc.contains("n") ? doc["n"].get<int>() : -1;
  for (const Json& a : doc["atoms"]) {
    if (!a.contains("x") || !a.contains("t") || !a.contains("w"))
      throw std::invalid_argument("measure: every atom needs x, t and w");
    const auto x = a["x"].get<std::vector<double>>();
    if (mu.n < 0) mu.n = static_cast<int>(x.size());
    Point z;
    z.x = SpatialVector::Map(x.data(), static_cast<Eigen::Index>(x.size()));
    z.t = a["t"].get<double>();
    mu.add(z, a["w"].get<double>());
  }
  if (mu.n < 1) throw std::invalid_argument("measure: cannot infer the dimension");
  return mu;
}

Json to_json(const ball::SphericalExpansion& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs) {
    Json deg = Json::array();
    for (const auto& v : c) deg.push_back({v.real(), v.imag()});
    coeffs.push_back(deg);
  }
  return {{"n", f.n}, {"K", f.degree()}, {"coeffs", coeffs}};
}

ball::SphericalExpansion expansion_from_json(const Json& doc) {
  try {
    const int n = doc.at("n").get<int>();
    const int K = doc.at("K").get<int>();
    ball::SphericalExpansion f = ball::SphericalExpansion::zero(n, K);
    const Json& coeffs = doc.at("coeffs");
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != K + 1)
      throw std::invalid_argument("expansion: coeffs must hold K + 1 degrees");
    for (int k = 0; k <= K; ++k) {
      const Json& deg = coeffs[static_cast<std::size_t>(k)];
      if (static_cast<int>(deg.size()) != ball::harmonic_dim(n, k))
        throw std::invalid_argument("expansion: degree " + std::to_string(k) + " has the wrong dimension");
      for (std::size_t j = 0; j < deg.size(); ++j) {
        const auto v = deg[j].get<std::vector<double>>();
        if (v.size() != 2) throw std::invalid_argument("expansion: coefficients are [re, im] pairs");
        f.coeffs[static_cast<std::size_t>(k)](static_cast<Eigen::Index>(j)) = {v[0], v[1]};
      }
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("expansion: ") + e.what());
  }
}

Json to_json(const DerivPolynomial& p) { return {{"l", p.l}, {"n", p.n}, {"coeffs", p.coeffs}}; }

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("csv: row width differs from header");
  rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
      if (!quote) {
        out << cells[i];
        continue;
      }
      out << '"';
      for (char ch : cells[i]) out << (ch == '"' ? "\"\"" : std::string(1, ch));
      out << '"';
    }
    out << '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out.str();
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << table.str();
}

CsvTable norm_table(std::span<const NormRow> rows) {
  CsvTable t{{"space", "p", "q", "alpha", "field_id", "region_id", "value", "quad_budget"}, {}};
  for (const NormRow& r : rows)
    t.add_row({r.space, format_double(r.p), format_double(r.q), format_double(r.alpha), r.field_id, r.region_id,
               format_double(r.value), r.quad_budget});
  return t;
}

CsvTable carleson_table(const CarlesonReport& report) {
  CsvTable t{{"cube", "level", "mass", "ratio"}, {}};
  for (const CarlesonRow& r : report.rows)
    t.add_row({r.cube.id(), std::to_string(r.cube.level), format_double(r.mass), format_double(r.ratio)});
  return t;
}

CsvTable functional_table(const ball::FunctionalReport& report) {
  CsvTable t{{"rho", "value"}, {}};
  for (std::size_t i = 0; i < report.rho.size(); ++i)
    t.add_row({format_double(report.rho[i]), format_double(report.per_rho[i])});
  return t;
}

}  // namespace hfs::io
