#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lipext/conditions.hpp"
#include "lipext/types.hpp"

namespace lipext {

inline constexpr const char* kToolVersion = "lipext 1.0.0";

/// Sidecar run report tying an output table to its inputs.
struct RunReport {
  std::string command;
  std::string dataset_digest;
  std::map<std::string, double> constants;  // M, c, alpha as applicable
  std::string mode;
  std::vector<std::pair<std::string, ConditionReport>> checks;
  bool hypotheses_verified = true;
  double elapsed_seconds = 0.0;
  std::string tool_version = kToolVersion;
  std::uint64_t rng_seed = 0;

  void save(const std::string& path) const;
  static RunReport load(const std::string& path);
};

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
};

/// Parses "lo1:hi1:n1,lo2:hi2:n2,...".
std::vector<GridAxis> parse_grid(const std::string& spec);

/// Row-major enumeration of the grid nodes (last axis fastest).
std::vector<Vector> grid_points(const std::vector<GridAxis>& axes);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

}  // namespace lipext
