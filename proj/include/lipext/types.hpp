#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace lipext {

using Vector = Eigen::VectorXd;

/// Input validation failure (bad file, bad dimensions, duplicate points, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical hypothesis of one of the extension theorems fails on the data.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

/// The simplex QP did not certify optimality within its iteration cap.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Finite scattered 1-jet data: points z_i with values f(z_i) and gradients G(z_i).
struct JetDataset {
  int dim = 0;
  std::vector<Vector> points;
  std::vector<double> values;
  std::vector<Vector> gradients;

  std::size_t size() const { return points.size(); }

  // Throws ValidationError on any invariant violation.
  void validate() const;
};

/// Finite scattered mapping data: points z_i in R^{dim_x} with values G(z_i) in R^{dim_y}.
struct MappingDataset {
  int dim_x = 0;
  int dim_y = 0;
  std::vector<Vector> points;
  std::vector<Vector> values;

  std::size_t size() const { return points.size(); }

  void validate() const;
};

struct Constants {
  double M = 1.0;    // gradient-Lipschitz / Lipschitz bound, > 0
  double c = 0.0;    // strong-convexity modulus, may be <= 0; requires M > c
  double alpha = 1.0;  // strong biLipschitz constant, in (0, 1]
};

// Two points count as duplicates when closer than this scale-relative tolerance.
double duplicate_tolerance(double max_norm);

/// Exact maximum of ||G(x)-G(y)|| / ||x-y|| over all pairs. Needs size >= 2.
double lipschitz_constant(const MappingDataset& data);

}  // namespace lipext
