#pragma once

#include "hfs/ball.hpp"
#include "hfs/carleson.hpp"
#include "hfs/geometry.hpp"
#include "hfs/kernels.hpp"

#include <json.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace hfs::io {

/// Insertion-ordered JSON, so reports serialize in a fixed key order.
using Json = nlohmann::ordered_json;

/// {level, index[], center[], side}
Json to_json(const WhitneyCube& cube);
Json to_json(std::span<const WhitneyCube> cubes);

/// {atoms: [{x: [..], t, w}]}
Json to_json(const AtomicMeasure& mu);
/// Throws std::invalid_argument on a malformed document or an invalid atom.
AtomicMeasure measure_from_json(const Json& doc);

/// {n, K, coeffs: [[[re, im], ...] per degree]}
Json to_json(const ball::SphericalExpansion& f);
/// Throws std::invalid_argument when the shape does not match n and K.
ball::SphericalExpansion expansion_from_json(const Json& doc);

/// {l, n, coeffs}
Json to_json(const DerivPolynomial& p);

Json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline; creates parent directories.
void write_json_file(const std::filesystem::path& path, const Json& doc);

/// Shortest decimal that round-trips the double.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Throws when the row width differs from the header.
  void add_row(std::vector<std::string> row);
  std::string str() const;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// One norm computation as a report row.
struct NormRow {
  std::string space;
  double p = 0.0;
  double q = 0.0;
  double alpha = 0.0;
  std::string field_id;
  std::string region_id;
  double value = 0.0;
  std::string quad_budget;
};

CsvTable norm_table(std::span<const NormRow> rows);
CsvTable carleson_table(const CarlesonReport& report);
CsvTable functional_table(const ball::FunctionalReport& report);

}  // namespace hfs::io
