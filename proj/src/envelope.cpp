#include "lipext/envelope.hpp"

#include <cmath>
#include <sstream>

namespace lipext {

void ParabolaFamily::validate() const {
  if (!(M > 0.0)) throw ValidationError("parabola family: M must be positive");
  if (dim <= 0) throw ValidationError("parabola family: dimension must be positive");
  if (B.cols() < 1) throw ValidationError("parabola family: needs at least one piece");
  if (B.rows() != dim || beta.size() != B.cols() || gamma.size() != B.cols())
    throw ValidationError("parabola family: inconsistent shapes");
  if (!B.allFinite() || !beta.allFinite())
    throw ValidationError("parabola family: non-finite coefficients");
}

void ParabolaFamily::refresh_gamma() {
  gamma = B.colwise().squaredNorm().transpose() / (4.0 * M) - beta;
}

ParabolaFamily family_from_jet(const JetDataset& jet, double M) {
  jet.validate();
  if (!(M > 0.0)) throw ValidationError("family_from_jet: M must be positive");
  const int n = static_cast<int>(jet.size());
  ParabolaFamily fam;
  fam.M = M;
  fam.dim = jet.dim;
  fam.B.resize(jet.dim, n);
  fam.beta.resize(n);
  for (int i = 0; i < n; ++i) {
    const Vector& y = jet.points[i];
    const Vector& g = jet.gradients[i];
    fam.B.col(i) = g - M * y;
    fam.beta[i] = jet.values[i] - g.dot(y) + 0.5 * M * y.squaredNorm();
  }
  fam.refresh_gamma();
  return fam;
}

ParabolaFamily family_from_mapping(const MappingDataset& data, double M) {
  data.validate();
  if (!(M > 0.0)) throw ValidationError("family_from_mapping: M must be positive");
  const int n = static_cast<int>(data.size());
  ParabolaFamily fam;
  fam.M = M;
  fam.dim = data.dim_x + data.dim_y;
  fam.B.resize(fam.dim, n);
  fam.beta.resize(n);
  for (int i = 0; i < n; ++i) {
    fam.B.col(i).head(data.dim_x) = -M * data.points[i];
    fam.B.col(i).tail(data.dim_y) = data.values[i];
    fam.beta[i] = 0.5 * M * data.points[i].squaredNorm();
  }
  fam.refresh_gamma();
  if (n >= 2) {
    const double lip = lipschitz_constant(data);
    if (M < lip * (1.0 - 1e-12)) fam.hypothesis_ok = false;
  }
  return fam;
}

double eval_piecewise_min(const ParabolaFamily& fam, const Vector& w) {
  fam.validate();
  if (w.size() != fam.dim) throw ValidationError("eval_piecewise_min: query dimension mismatch");
  const double quad = fam.M * w.squaredNorm();
  return quad + (fam.B.transpose() * w + fam.beta).minCoeff();
}

EnvelopeEval eval_conv(const ParabolaFamily& fam, const Vector& w, const QpOptions& opts) {
  fam.validate();
  if (w.size() != fam.dim || !w.allFinite())
    throw ValidationError("eval_conv: bad query point");
  EnvelopeEval out;
  out.weights = solve_simplex_qp(fam.B, fam.M, w, fam.gamma, opts);
  if (!out.weights.converged) {
    std::ostringstream os;
    os << "eval_conv: QP did not certify optimality (kkt residual "
       << out.weights.kkt_residual << " after " << out.weights.iterations << " iterations)";
    throw SolverError(os.str());
  }
  out.value = out.weights.objective;
  out.gradient = 2.0 * fam.M * w + fam.B * out.weights.lambda;
  for (int i = 0; i < fam.count(); ++i)
    if (out.weights.lambda[i] > 1e-10) out.active.push_back(i);
  return out;
}

std::vector<EnvelopeEval> eval_conv_batch(const ParabolaFamily& fam,
                                          const std::vector<Vector>& queries,
                                          const QpOptions& opts) {
  std::vector<EnvelopeEval> out;
  out.reserve(queries.size());
  std::ostringstream failures;
  bool failed = false;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    try {
      out.push_back(eval_conv(fam, queries[i], opts));
    } catch (const std::exception& e) {
      failed = true;
      failures << "query " << i << ": " << e.what() << "; ";
    }
  }
  if (failed) throw SolverError("eval_conv_batch: " + failures.str());
  return out;
}

}  // namespace lipext
