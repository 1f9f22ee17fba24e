#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lipext/types.hpp"

namespace lipext {

struct QpOptions {
  double kkt_tol = 1e-9;
  int max_iterations = 0;  // 0 -> 10*N + 1000
};

/// Convex-combination weights on the probability simplex with a KKT certificate.
struct SimplexWeights {
  Eigen::VectorXd lambda;
  double kkt_residual = 0.0;
  int iterations = 0;
  double objective = 0.0;
  bool converged = false;
  std::vector<double> objective_trace;  // one entry per iterate, non-increasing
};

/// Minimize q(lambda) = M * ||w + B*lambda/(2M)||^2 - <gamma, lambda> over
/// { lambda >= 0, sum(lambda) = 1 }. Columns of B are the parabola slopes b_i.
///
/// Primal active-set with lowest-index pivoting; falls back to projected
/// gradient (fixed step 1/L) if the active set cycles. Throws SolverError on
/// non-finite input; non-convergence is reported via `converged` and residuals.
SimplexWeights solve_simplex_qp(const Eigen::MatrixXd& B, double M, const Vector& w,
                                const Eigen::VectorXd& gamma, const QpOptions& opts = {});

/// Warm-started variant; `initial` is projected onto the simplex first.
SimplexWeights solve_simplex_qp(const Eigen::MatrixXd& B, double M, const Vector& w,
                                const Eigen::VectorXd& gamma, const Eigen::VectorXd& initial,
                                const QpOptions& opts = {});

/// Euclidean projection onto the probability simplex (sort-based).
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

}  // namespace lipext
