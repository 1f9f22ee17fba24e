#include "lipext/types.hpp"

#include <cmath>
#include <sstream>

namespace lipext {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

void check_finite(const Vector& v, const std::string& what, std::size_t row) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k])) {
      std::ostringstream os;
      os << "non-finite entry in " << what << " at row " << row << ", coordinate " << k;
      throw ValidationError(os.str());
    }
  }
}

void check_duplicates(const std::vector<Vector>& points) {
  double max_norm = 0.0;
  for (const auto& p : points) max_norm = std::max(max_norm, p.norm());
  const double tol = duplicate_tolerance(max_norm);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if ((points[i] - points[j]).norm() <= tol) {
        std::ostringstream os;
        os << "duplicate points at rows " << i << " and " << j;
        throw ValidationError(os.str());
      }
    }
  }
}

}  // namespace

double duplicate_tolerance(double max_norm) { return 1e-12 * (1.0 + max_norm); }

void JetDataset::validate() const {
  require(dim > 0, "jet dataset: dimension must be positive");
  require(!points.empty(), "jet dataset: empty point set");
  require(points.size() == values.size() && points.size() == gradients.size(),
          "jet dataset: points/values/gradients length mismatch");
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(points[i].size() == dim, "jet dataset: point dimension mismatch at row " + std::to_string(i));
    require(gradients[i].size() == dim, "jet dataset: gradient dimension mismatch at row " + std::to_string(i));
    check_finite(points[i], "points", i);
    check_finite(gradients[i], "gradients", i);
    if (!std::isfinite(values[i]))
      throw ValidationError("non-finite entry in values at row " + std::to_string(i));
  }
  check_duplicates(points);
}

void MappingDataset::validate() const {
  require(dim_x > 0 && dim_y > 0, "mapping dataset: dimensions must be positive");
  require(!points.empty(), "mapping dataset: empty point set");
  require(points.size() == values.size(), "mapping dataset: points/values length mismatch");
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(points[i].size() == dim_x, "mapping dataset: point dimension mismatch at row " + std::to_string(i));
    require(values[i].size() == dim_y, "mapping dataset: value dimension mismatch at row " + std::to_string(i));
    check_finite(points[i], "points", i);
    check_finite(values[i], "values", i);
  }
  check_duplicates(points);
}

double lipschitz_constant(const MappingDataset& data) {
  if (data.size() < 2)
    throw ValidationError("lipschitz_constant: needs at least 2 points");
  double best = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = i + 1; j < data.size(); ++j) {
      const double dx = (data.points[i] - data.points[j]).norm();
      const double dg = (data.values[i] - data.values[j]).norm();
      best = std::max(best, dg / dx);
    }
  }
  return best;
}

}  // namespace lipext
