#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lipext/qp.hpp"
#include "lipext/types.hpp"

namespace lipext {

/// g represented as the pointwise minimum of parabolas with a common
/// quadratic part: p_i(w) = M*||w||^2 + <b_i, w> + beta_i.
struct ParabolaFamily {
  double M = 1.0;            // common coefficient, > 0
  int dim = 0;               // ambient dimension
  Eigen::MatrixXd B;         // dim x N, column i is b_i
  Eigen::VectorXd beta;      // N
  Eigen::VectorXd gamma;     // gamma_i = ||b_i||^2 / (4M) - beta_i
  bool hypothesis_ok = true;  // false when a theorem hypothesis was only warned about

  int count() const { return static_cast<int>(B.cols()); }
  void validate() const;
  void refresh_gamma();
};

struct EnvelopeEval {
  double value = 0.0;          // conv(g)(w)
  Vector gradient;             // 2M*w + B*lambda
  SimplexWeights weights;
  std::vector<int> active;     // indices with lambda_i > 1e-10
};

/// One piece per jet point y: b = G(y) - M*y, beta = f(y) - <G(y), y> + (M/2)||y||^2.
/// Represents g(x) = inf_y { f(y) + <G(y), x-y> + (M/2)||x-y||^2 } + (M/2)||x||^2.
ParabolaFamily family_from_jet(const JetDataset& jet, double M);

/// Ambient dimension dim_x + dim_y; one piece per point z: b = (-M*z, G(z)),
/// beta = (M/2)||z||^2. Represents the product-space g of the Lipschitz
/// extension formula. If M is below the data's Lipschitz constant the family
/// is still built but flagged (hypothesis_ok = false).
ParabolaFamily family_from_mapping(const MappingDataset& data, double M);

/// min_i p_i(w), exact over the finite family.
double eval_piecewise_min(const ParabolaFamily& fam, const Vector& w);

/// conv(g)(w) and its gradient via the simplex QP
///   min over the simplex of M*||w + B*lambda/(2M)||^2 - <gamma, lambda>.
/// Throws SolverError when the QP fails to certify.
EnvelopeEval eval_conv(const ParabolaFamily& fam, const Vector& w, const QpOptions& opts = {});

/// Elementwise eval_conv; deterministic ordering. Per-query failures are
/// collected and rethrown with indices.
std::vector<EnvelopeEval> eval_conv_batch(const ParabolaFamily& fam,
                                          const std::vector<Vector>& queries,
                                          const QpOptions& opts = {});

}  // namespace lipext
