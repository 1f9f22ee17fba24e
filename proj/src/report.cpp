#include "lipext/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lipext {

namespace {
using nlohmann::json;
}

void RunReport::save(const std::string& path) const {
  json j;
  j["command"] = command;
  j["dataset_digest"] = dataset_digest;
  j["constants"] = constants;
  j["mode"] = mode;
  j["hypotheses_verified"] = hypotheses_verified;
  j["elapsed_seconds"] = elapsed_seconds;
  j["tool_version"] = tool_version;
  j["rng_seed"] = rng_seed;
  json checks_json = json::array();
  for (const auto& [name, rep] : checks) {
    json c;
    c["name"] = name;
    c["holds"] = rep.holds;
    c["worst_pair"] = {rep.worst_pair.first, rep.worst_pair.second};
    c["slack"] = rep.slack;
    c["tolerance_used"] = rep.tolerance_used;
    checks_json.push_back(c);
  }
  j["checks"] = checks_json;
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write report file: " + path);
  out << j.dump(2) << "\n";
}

RunReport RunReport::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open report file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("report parse error in " + path + ": " + e.what());
  }
  RunReport r;
  r.command = j.value("command", "");
  r.dataset_digest = j.value("dataset_digest", "");
  r.mode = j.value("mode", "");
  r.hypotheses_verified = j.value("hypotheses_verified", true);
  r.elapsed_seconds = j.value("elapsed_seconds", 0.0);
  r.tool_version = j.value("tool_version", "");
  r.rng_seed = j.value("rng_seed", std::uint64_t{0});
  if (j.contains("constants"))
    r.constants = j["constants"].get<std::map<std::string, double>>();
  if (j.contains("checks")) {
    for (const auto& c : j["checks"]) {
      ConditionReport rep;
      rep.holds = c.value("holds", false);
      rep.slack = c.value("slack", 0.0);
      rep.tolerance_used = c.value("tolerance_used", 0.0);
      if (c.contains("worst_pair") && c["worst_pair"].size() == 2)
        rep.worst_pair = {c["worst_pair"][0].get<std::size_t>(),
                          c["worst_pair"][1].get<std::size_t>()};
      r.checks.emplace_back(c.value("name", ""), rep);
    }
  }
  return r;
}

std::vector<GridAxis> parse_grid(const std::string& spec) {
  std::vector<GridAxis> axes;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    GridAxis ax;
    char colon1 = 0, colon2 = 0;
    std::istringstream ps(part);
    if (!(ps >> ax.lo >> colon1 >> ax.hi >> colon2 >> ax.n) || colon1 != ':' || colon2 != ':')
      throw ValidationError("bad grid axis '" + part + "', expected lo:hi:n");
    if (ax.n < 2 || !(ax.lo < ax.hi))
      throw ValidationError("bad grid axis '" + part + "': need lo < hi and n >= 2");
    axes.push_back(ax);
  }
  if (axes.empty()) throw ValidationError("empty grid specification");
  return axes;
}

std::vector<Vector> grid_points(const std::vector<GridAxis>& axes) {
  const int d = static_cast<int>(axes.size());
  std::size_t total = 1;
  for (const auto& ax : axes) total *= static_cast<std::size_t>(ax.n);
  if (total > 10'000'000) throw ValidationError("grid has more than 1e7 nodes");
  std::vector<Vector> out;
  out.reserve(total);
  std::vector<int> idx(d, 0);
  for (std::size_t count = 0; count < total; ++count) {
    Vector p(d);
    for (int k = 0; k < d; ++k)
      p[k] = axes[k].lo + idx[k] * (axes[k].hi - axes[k].lo) / (axes[k].n - 1);
    out.push_back(p);
    for (int k = d - 1; k >= 0; --k) {
      if (++idx[k] < axes[k].n) break;
      idx[k] = 0;
    }
  }
  return out;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write table file: " + path);
  for (std::size_t k = 0; k < table.header.size(); ++k)
    out << (k ? "," : "") << table.header[k];
  out << "\n";
  char buf[32];
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[k]);
      out << (k ? "," : "") << buf;
    }
    out << "\n";
  }
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open table file: " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty table file: " + path);
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream rs(line);
    while (std::getline(rs, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != table.header.size())
      throw ValidationError("ragged row in table file: " + path);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace lipext
