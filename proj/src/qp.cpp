#include "lipext/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace lipext {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Problem {
  MatrixXd H;  // B^T B / (2M)
  VectorXd c;  // B^T w - gamma
  double q0;   // M * ||w||^2
  double objective(const VectorXd& lambda) const {
    return q0 + c.dot(lambda) + 0.5 * lambda.dot(H * lambda);
  }
  VectorXd gradient(const VectorXd& lambda) const { return c + H * lambda; }
};

double kkt_residual_of(const Problem& p, const VectorXd& lambda) {
  const VectorXd g = p.gradient(lambda);
  const double mu = lambda.dot(g);  // multiplier estimate; exact at optimality
  double res = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    res = std::max(res, mu - g[i]);                          // stationarity: g_i >= mu
    res = std::max(res, std::abs(lambda[i] * (g[i] - mu)));  // complementarity
  }
  return std::max(res, 0.0);
}

// Equality-constrained subproblem on the free set: minimize over y supported
// on `free` with sum(y) = 1. The first free variable is eliminated and the
// reduced system solved by eigen-pseudoinverse so rank-deficient H is fine.
// Either `target` holds the affine minimizer, or `descent` holds a
// zero-curvature strict descent direction (entries sum to 0).
struct EqpResult {
  bool bounded = true;
  VectorXd target;
  VectorXd descent;
};

EqpResult solve_eqp(const Problem& p, const std::vector<int>& free) {
  const int k = static_cast<int>(free.size());
  EqpResult out;
  if (k == 1) {
    out.target = VectorXd::Ones(1);
    return out;
  }
  MatrixXd Hff(k, k);
  VectorXd cf(k);
  for (int a = 0; a < k; ++a) {
    cf[a] = p.c[free[a]];
    for (int b = 0; b < k; ++b) Hff(a, b) = p.H(free[a], free[b]);
  }
  // y = e0 + Z u with Z = [-1^T; I]
  MatrixXd Z = MatrixXd::Zero(k, k - 1);
  Z.row(0).setConstant(-1.0);
  Z.block(1, 0, k - 1, k - 1).setIdentity();
  VectorXd e0 = VectorXd::Zero(k);
  e0[0] = 1.0;

  const MatrixXd A = Z.transpose() * Hff * Z;
  const VectorXd b = Z.transpose() * (Hff * e0 + cf);

  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(A);
  const VectorXd& ev = eig.eigenvalues();
  const double cutoff = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  const VectorXd proj = eig.eigenvectors().transpose() * (-b);
  VectorXd u = VectorXd::Zero(k - 1);
  for (int a = 0; a < k - 1; ++a)
    if (ev[a] > cutoff) u += (proj[a] / ev[a]) * eig.eigenvectors().col(a);

  const VectorXd r = A * u + b;  // null-space component of b
  if (r.norm() > 1e-10 * (1.0 + b.norm())) {
    out.bounded = false;
    out.descent = Z * (-r);
    return out;
  }
  out.target = e0 + Z * u;
  return out;
}

void clamp_and_renormalize(VectorXd& lambda) {
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda[i] < 0.0) lambda[i] = 0.0;
  const double s = lambda.sum();
  if (s > 0.0) lambda /= s;
}

SimplexWeights projected_gradient(const Problem& p, VectorXd lambda, const QpOptions& opts,
                                  int iterations_used, std::vector<double> trace) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(p.H);
  const double L = std::max(eig.eigenvalues().maxCoeff(), 0.0) + 1e-12;
  const double step = 1.0 / L;
  // PG needs far more iterations than active-set exchange
  const int pg_cap = std::max(opts.max_iterations > 0 ? opts.max_iterations : 0, 200000);
  int it = iterations_used;
  double res = kkt_residual_of(p, lambda);
  while (res > opts.kkt_tol && it < pg_cap) {
    lambda = project_to_simplex(lambda - step * p.gradient(lambda));
    trace.push_back(p.objective(lambda));
    res = kkt_residual_of(p, lambda);
    ++it;
  }
  SimplexWeights out;
  out.lambda = std::move(lambda);
  out.kkt_residual = res;
  out.iterations = it;
  out.objective = p.objective(out.lambda);
  out.converged = res <= opts.kkt_tol;
  out.objective_trace = std::move(trace);
  return out;
}

}  // namespace

VectorXd project_to_simplex(const VectorXd& v) {
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = u[0] - 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    css += u[i];
    const double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

SimplexWeights solve_simplex_qp(const Eigen::MatrixXd& B, double M, const Vector& w,
                                const Eigen::VectorXd& gamma, const QpOptions& opts) {
  return solve_simplex_qp(B, M, w, gamma, VectorXd(), opts);
}

SimplexWeights solve_simplex_qp(const Eigen::MatrixXd& B, double M, const Vector& w,
                                const Eigen::VectorXd& gamma, const Eigen::VectorXd& initial,
                                const QpOptions& opts) {
  const int n = static_cast<int>(B.cols());
  if (n < 1) throw SolverError("solve_simplex_qp: needs at least one column");
  if (!(M > 0.0)) throw SolverError("solve_simplex_qp: M must be positive");
  if (!B.allFinite() || !w.allFinite() || !gamma.allFinite() ||
      (initial.size() > 0 && !initial.allFinite()))
    throw SolverError("solve_simplex_qp: non-finite input");
  if (gamma.size() != n || B.rows() != w.size())
    throw SolverError("solve_simplex_qp: dimension mismatch");

  Problem p;
  p.H = B.transpose() * B / (2.0 * M);
  p.c = B.transpose() * w - gamma;
  p.q0 = M * w.squaredNorm();

  if (n == 1) {
    SimplexWeights out;
    out.lambda = VectorXd::Ones(1);
    out.objective = p.objective(out.lambda);
    out.objective_trace = {out.objective};
    out.converged = true;
    return out;
  }

  VectorXd lambda;
  std::vector<bool> is_free(n, false);
  if (initial.size() == n) {
    lambda = project_to_simplex(initial);
    for (int i = 0; i < n; ++i) is_free[i] = lambda[i] > 0.0;
  } else {
    // cheapest vertex, lowest index on ties
    int best = 0;
    double best_q = p.objective(VectorXd::Unit(n, 0));
    for (int i = 1; i < n; ++i) {
      const double qi = p.objective(VectorXd::Unit(n, i));
      if (qi < best_q - 1e-15 * (1.0 + std::abs(best_q))) {
        best_q = qi;
        best = i;
      }
    }
    lambda = VectorXd::Unit(n, best);
    is_free[best] = true;
  }

  const int cap = opts.max_iterations > 0 ? opts.max_iterations : 10 * n + 1000;
  std::vector<double> trace{p.objective(lambda)};
  std::map<std::vector<bool>, int> seen;  // cycle detection on active-set signatures

  for (int it = 0; it < cap; ++it) {
    if (++seen[is_free] > 4) return projected_gradient(p, lambda, opts, it, std::move(trace));

    std::vector<int> free;
    for (int i = 0; i < n; ++i)
      if (is_free[i]) free.push_back(i);

    const EqpResult eqp = solve_eqp(p, free);

    VectorXd lf(free.size());
    for (std::size_t a = 0; a < free.size(); ++a) lf[a] = lambda[free[a]];

    VectorXd d;
    double t_cap = 1.0;
    if (!eqp.bounded) {
      d = eqp.descent;
      t_cap = std::numeric_limits<double>::infinity();
    } else {
      d = eqp.target - lf;
    }

    const double dnorm = d.cwiseAbs().maxCoeff();
    if (eqp.bounded && dnorm <= 1e-13 * (1.0 + lf.cwiseAbs().maxCoeff())) {
      // optimum on the current face; examine bound multipliers
      const VectorXd g = p.gradient(lambda);
      double mu = 0.0;
      for (int i : free) mu += g[i];
      mu /= static_cast<double>(free.size());
      int release = -1;
      double worst = -opts.kkt_tol;
      for (int i = 0; i < n; ++i) {
        if (is_free[i]) continue;
        const double sigma = g[i] - mu;
        if (sigma < worst) {  // strict comparison: lowest index wins ties
          worst = sigma;
          release = i;
        }
      }
      if (release < 0) {
        SimplexWeights out;
        out.lambda = lambda;
        clamp_and_renormalize(out.lambda);
        out.kkt_residual = kkt_residual_of(p, out.lambda);
        out.iterations = it;
        out.objective = p.objective(out.lambda);
        out.converged = out.kkt_residual <= opts.kkt_tol;
        out.objective_trace = std::move(trace);
        if (!out.converged)
          return projected_gradient(p, out.lambda, opts, it, std::move(out.objective_trace));
        return out;
      }
      is_free[release] = true;  // enters at value 0; next EQP moves it
      trace.push_back(p.objective(lambda));
      continue;
    }

    // largest feasible step along d, blocking variable leaves the free set
    double t = t_cap;
    int blocking = -1;
    for (std::size_t a = 0; a < free.size(); ++a) {
      if (d[a] < 0.0) {
        const double ta = lf[a] / (-d[a]);
        if (ta < t) {
          t = ta;
          blocking = static_cast<int>(a);
        }
      }
    }
    if (!std::isfinite(t)) return projected_gradient(p, lambda, opts, it, std::move(trace));
    t = std::max(t, 0.0);
    for (std::size_t a = 0; a < free.size(); ++a) lambda[free[a]] = lf[a] + t * d[a];
    if (blocking >= 0) {
      lambda[free[blocking]] = 0.0;
      is_free[free[blocking]] = false;
    }
    clamp_and_renormalize(lambda);
    trace.push_back(p.objective(lambda));
  }
  return projected_gradient(p, lambda, opts, cap, std::move(trace));
}

}  // namespace lipext
