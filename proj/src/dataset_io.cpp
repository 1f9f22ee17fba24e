#include "lipext/dataset_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lipext {

namespace {

using nlohmann::json;

Vector to_vector(const json& arr, const char* what) {
  if (!arr.is_array()) throw ValidationError(std::string(what) + ": expected an array of numbers");
  Vector v(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    if (!arr[k].is_number()) throw ValidationError(std::string(what) + ": non-numeric entry");
    v[static_cast<Eigen::Index>(k)] = arr[k].get<double>();
  }
  return v;
}

std::vector<Vector> to_vectors(const json& arr, const char* what) {
  if (!arr.is_array()) throw ValidationError(std::string(what) + ": expected an array of arrays");
  std::vector<Vector> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::ostringstream os;
    os << what << "[" << i << "]";
    out.push_back(to_vector(arr[i], os.str().c_str()));
  }
  return out;
}

void reject_unknown_fields(const json& j, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ValidationError("unknown field in dataset file: '" + it.key() + "'");
  }
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open dataset file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("parse error in " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ValidationError("dataset file must hold a JSON object: " + path);
  return j;
}

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v[k]);
  return a;
}

void digest_number(std::uint64_t& h, double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g,", x);
  for (const char* p = buf; *p; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 0x100000001b3ULL;  // FNV-1a
  }
}

void digest_vector(std::uint64_t& h, const Vector& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) digest_number(h, v[k]);
}

}  // namespace

Dataset load_dataset(const std::string& path) {
  const json j = parse_file(path);
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ValidationError("dataset file missing string field 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "jet") {
    reject_unknown_fields(j, {"kind", "dim_x", "points", "values", "gradients"});
    JetDataset d;
    d.dim = j.at("dim_x").get<int>();
    d.points = to_vectors(j.at("points"), "points");
    d.gradients = to_vectors(j.at("gradients"), "gradients");
    const json& vals = j.at("values");
    if (!vals.is_array()) throw ValidationError("values: expected an array of numbers");
    for (const auto& v : vals) {
      if (!v.is_number()) throw ValidationError("values: non-numeric entry");
      d.values.push_back(v.get<double>());
    }
    d.validate();
    return d;
  }
  if (kind == "mapping") {
    reject_unknown_fields(j, {"kind", "dim_x", "dim_y", "points", "values"});
    MappingDataset d;
    d.dim_x = j.at("dim_x").get<int>();
    d.dim_y = j.at("dim_y").get<int>();
    d.points = to_vectors(j.at("points"), "points");
    d.values = to_vectors(j.at("values"), "values");
    d.validate();
    return d;
  }
  throw ValidationError("dataset 'kind' must be \"jet\" or \"mapping\", got \"" + kind + "\"");
}

JetDataset load_jet(const std::string& path) {
  Dataset d = load_dataset(path);
  if (auto* jet = std::get_if<JetDataset>(&d)) return std::move(*jet);
  throw ValidationError("expected a jet dataset: " + path);
}

MappingDataset load_mapping(const std::string& path) {
  Dataset d = load_dataset(path);
  if (auto* m = std::get_if<MappingDataset>(&d)) return std::move(*m);
  throw ValidationError("expected a mapping dataset: " + path);
}

void save_dataset(const JetDataset& data, const std::string& path) {
  json j;
  j["kind"] = "jet";
  j["dim_x"] = data.dim;
  j["points"] = json::array();
  j["values"] = json::array();
  j["gradients"] = json::array();
  for (std::size_t i = 0; i < data.size(); ++i) {
    j["points"].push_back(vector_to_json(data.points[i]));
    j["values"].push_back(data.values[i]);
    j["gradients"].push_back(vector_to_json(data.gradients[i]));
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write dataset file: " + path);
  out << j.dump(2) << "\n";
}

void save_dataset(const MappingDataset& data, const std::string& path) {
  json j;
  j["kind"] = "mapping";
  j["dim_x"] = data.dim_x;
  j["dim_y"] = data.dim_y;
  j["points"] = json::array();
  j["values"] = json::array();
  for (std::size_t i = 0; i < data.size(); ++i) {
    j["points"].push_back(vector_to_json(data.points[i]));
    j["values"].push_back(vector_to_json(data.values[i]));
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write dataset file: " + path);
  out << j.dump(2) << "\n";
}

std::string dataset_digest(const Dataset& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  if (const auto* jet = std::get_if<JetDataset>(&data)) {
    digest_number(h, 1.0);
    digest_number(h, jet->dim);
    for (std::size_t i = 0; i < jet->size(); ++i) {
      digest_vector(h, jet->points[i]);
      digest_number(h, jet->values[i]);
      digest_vector(h, jet->gradients[i]);
    }
  } else {
    const auto& m = std::get<MappingDataset>(data);
    digest_number(h, 2.0);
    digest_number(h, m.dim_x);
    digest_number(h, m.dim_y);
    for (std::size_t i = 0; i < m.size(); ++i) {
      digest_vector(h, m.points[i]);
      digest_vector(h, m.values[i]);
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lipext
