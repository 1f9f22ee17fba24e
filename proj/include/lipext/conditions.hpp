#pragma once

#include <limits>
#include <utility>

#include "lipext/types.hpp"

namespace lipext {

/// Outcome of a pairwise admissibility check: minimum slack over ordered
/// pairs (x, y), x != y, of (RHS - LHS) of the defining inequality.
struct ConditionReport {
  bool holds = false;
  std::pair<std::size_t, std::size_t> worst_pair{0, 0};
  double slack = std::numeric_limits<double>::infinity();  // +inf when no pairs exist
  double tolerance_used = 0.0;
};

// Default tolerance model: holds iff slack >= -tol with
// tol = 1e-9 * (1 + scale), scale = largest magnitude entering the inequality.
// Pass tol < 0 to request the default.
constexpr double kDefaultTol = -1.0;

/// f(y) <= f(x) + 1/2 <G(x)+G(y), y-x> + (M/4)||x-y||^2 - (1/4M)||G(x)-G(y)||^2.
ConditionReport check_w11(const JetDataset& jet, double M, double tol = kDefaultTol);

/// f(x) >= f(y) + <G(y), x-y> + (1/2M)||G(x)-G(y)||^2.
ConditionReport check_cw11(const JetDataset& jet, double M, double tol = kDefaultTol);

/// Two-constant strong-convexity condition with constants (c, M), M > c.
ConditionReport check_scw11(const JetDataset& jet, double c, double M, double tol = kDefaultTol);

/// <G(x)-G(y), x-y> >= ||G(x)-G(y)||^2. Requires dim_x == dim_y.
ConditionReport check_firmly_nonexpansive(const MappingDataset& data, double tol = kDefaultTol);

/// Minimum over pairs of 2<x-y, G(x)-G(y)> / (||x-y||^2 + ||G(x)-G(y)||^2).
/// Requires dim_x == dim_y and size >= 2 (undefined on a single point).
double sbilip(const MappingDataset& data);

/// K = 1/alpha + sqrt(1/alpha^2 - 1); pairwise ratios of a strongly
/// biLipschitz mapping with constant alpha lie in [1/K, K].
double bilip_bound_from_alpha(double alpha);

enum class JetCondition { W11, CW11 };

/// Smallest M (to relative tolerance `tol`) at which the condition holds,
/// found by doubling to an upper bracket and bisecting. Throws HypothesisError
/// if the condition never holds below 1e12.
double minimal_m(const JetDataset& jet, JetCondition condition, double tol = 1e-10);

/// Quadratic-shift transform (f - (c/2)||.||^2, G - c*id); SCW^{1,1} with (c, M)
/// on the input is equivalent to CW^{1,1} with M - c on the output.
JetDataset scw11_to_cw11(const JetDataset& jet, double c);

}  // namespace lipext
