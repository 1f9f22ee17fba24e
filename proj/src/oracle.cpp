#include "lipext/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lipext::oracle {

namespace {

// direct evaluation of min_i p_i from the coefficients
double sampled_g(const ParabolaFamily& fam, const Vector& x) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < fam.count(); ++i)
    best = std::min(best, fam.M * x.squaredNorm() + fam.B.col(i).dot(x) + fam.beta[i]);
  return best;
}

Vector uniform_in_box(std::mt19937_64& rng, const Vector& lo, const Vector& hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector x(lo.size());
  for (Eigen::Index k = 0; k < lo.size(); ++k) x[k] = lo[k] + u(rng) * (hi[k] - lo[k]);
  return x;
}

}  // namespace

void GridSpec::validate() const {
  if (lower.size() == 0 || lower.size() != upper.size() ||
      resolution.size() != static_cast<std::size_t>(lower.size()))
    throw ValidationError("grid: inconsistent dimensions");
  double total = 1.0;
  for (std::size_t k = 0; k < resolution.size(); ++k) {
    if (resolution[k] < 2) throw ValidationError("grid: resolution must be >= 2 per axis");
    if (!(lower[static_cast<Eigen::Index>(k)] < upper[static_cast<Eigen::Index>(k)]))
      throw ValidationError("grid: lower bound must be below upper bound");
    total *= resolution[k];
  }
  if (total > 1e7) throw ValidationError("grid: more than 1e7 nodes");
}

std::vector<double> hull_envelope_1d(const ParabolaFamily& fam, const GridSpec& grid) {
  fam.validate();
  grid.validate();
  if (fam.dim != 1 || grid.lower.size() != 1)
    throw ValidationError("hull_envelope_1d: needs a 1D family and grid");
  const int n = grid.resolution[0];
  const double lo = grid.lower[0], hi = grid.upper[0];
  const double h = (hi - lo) / (n - 1);

  std::vector<double> t(n), v(n);
  for (int k = 0; k < n; ++k) {
    t[k] = lo + k * h;
    Vector x(1);
    x[0] = t[k];
    v[k] = sampled_g(fam, x);
  }

  // lower hull by monotone chain; abscissae are already sorted
  std::vector<int> hull;
  for (int k = 0; k < n; ++k) {
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      const double cross = (t[b] - t[a]) * (v[k] - v[a]) - (v[b] - v[a]) * (t[k] - t[a]);
      if (cross <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }

  std::vector<double> out(n);
  std::size_t seg = 0;
  for (int k = 0; k < n; ++k) {
    while (seg + 1 < hull.size() && t[hull[seg + 1]] < t[k]) ++seg;
    const int a = hull[seg];
    const int b = hull[std::min(seg + 1, hull.size() - 1)];
    if (a == b) {
      out[k] = v[a];
    } else {
      const double s = (t[k] - t[a]) / (t[b] - t[a]);
      out[k] = v[a] + s * (v[b] - v[a]);
    }
  }
  return out;
}

double caratheodory_sample(const ParabolaFamily& fam, const Vector& w, std::int64_t trials,
                           std::uint64_t rng_seed) {
  fam.validate();
  if (trials <= 0) throw ValidationError("caratheodory_sample: trials must be positive");
  if (w.size() != fam.dim) throw ValidationError("caratheodory_sample: dimension mismatch");
  const int d = fam.dim;

  // sampling box: parabola vertices and the query, padded
  Vector lo = w, hi = w;
  for (int i = 0; i < fam.count(); ++i) {
    const Vector vx = -fam.B.col(i) / (2.0 * fam.M);
    lo = lo.cwiseMin(vx);
    hi = hi.cwiseMax(vx);
  }
  const Vector pad = 0.5 * (hi - lo) + Vector::Ones(d);
  lo -= pad;
  hi += pad;

  const int N = fam.count();
  double best = sampled_g(fam, w);  // trivial one-point combination
  Vector best_xi = 2.0 * fam.M * w + fam.B.col(0);
  std::vector<int> best_set(d + 1, 0);
  bool have_incumbent = false;

  // Each candidate is a supporting slope xi and a subset of pieces: the
  // combination points are the tangency points x_j = (xi - b_j)/(2M) where
  // piece j has gradient xi, and the weights are the barycentric coordinates
  // of w. Infeasibility from an inexact slope is absorbed by moving the
  // heaviest point, so every accepted value is a true convex combination of
  // g-values and hence an upper bound on conv(g)(w).
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> uu(0.0, 1.0);
  std::vector<int> subset(d + 1);
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    // fixed draw count per trial so results are nested in `trials`
    const Vector probe = uniform_in_box(rng, lo, hi);
    for (int j = 0; j <= d; ++j) subset[j] = static_cast<int>(uu(rng) * N) % N;
    const double radius = std::pow(10.0, -6.0 * uu(rng));
    const double move = uu(rng);

    Vector xi;
    if (have_incumbent && move < 0.7) {
      // local refinement of the incumbent slope at a log-uniform scale
      xi = best_xi + radius * 2.0 * fam.M * (probe - w);
      if (move < 0.45) subset = best_set;
    } else {
      // fresh slope: the gradient of g's active piece at the probe point
      int active = 0;
      double gbest = std::numeric_limits<double>::infinity();
      for (int i = 0; i < N; ++i) {
        const double v = fam.M * probe.squaredNorm() + fam.B.col(i).dot(probe) + fam.beta[i];
        if (v < gbest) {
          gbest = v;
          active = i;
        }
      }
      xi = 2.0 * fam.M * probe + fam.B.col(active);
    }

    std::vector<int> uniq;
    for (int j = 0; j <= d; ++j)
      if (std::find(uniq.begin(), uniq.end(), subset[j]) == uniq.end())
        uniq.push_back(subset[j]);
    const int m = static_cast<int>(uniq.size());
    Eigen::MatrixXd A(d + 1, m);
    std::vector<Vector> pts(m);
    for (int j = 0; j < m; ++j) {
      pts[j] = (xi - fam.B.col(uniq[j])) / (2.0 * fam.M);
      A.col(j).head(d) = pts[j];
      A(d, j) = 1.0;
    }
    Eigen::VectorXd rhs(d + 1);
    rhs.head(d) = w;
    rhs[d] = 1.0;
    Eigen::VectorXd lambda = A.colPivHouseholderQr().solve(rhs);
    if (lambda.minCoeff() < -0.2) continue;
    double lsum = 0.0;
    for (int j = 0; j < m; ++j) {
      lambda[j] = std::max(lambda[j], 0.0);
      lsum += lambda[j];
    }
    if (lsum <= 0.0) continue;
    lambda /= lsum;
    Vector residual = w;
    for (int j = 0; j < m; ++j) residual -= lambda[j] * pts[j];
    int heaviest = 0;
    for (int j = 1; j < m; ++j)
      if (lambda[j] > lambda[heaviest]) heaviest = j;
    if (lambda[heaviest] < 1e-12) continue;
    pts[heaviest] += residual / lambda[heaviest];
    double val = 0.0;
    for (int j = 0; j < m; ++j) val += lambda[j] * sampled_g(fam, pts[j]);
    if (val < best) {
      best = val;
      best_xi = xi;
      best_set = subset;
      have_incumbent = true;
    }
  }
  return best;
}

Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& w, double h) {
  if (!(h > 0.0)) throw ValidationError("fd_gradient: step must be positive");
  Vector g(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    Vector wp = w, wm = w;
    wp[k] += h;
    wm[k] -= h;
    g[k] = (f(wp) - f(wm)) / (2.0 * h);
  }
  return g;
}

double sampled_lipschitz(const std::function<Vector(const Vector&)>& map, const GridSpec& region,
                         std::int64_t pairs, std::uint64_t rng_seed) {
  region.validate();
  std::mt19937_64 rng(rng_seed);
  double best = 0.0;
  for (std::int64_t p = 0; p < pairs; ++p) {
    const Vector x = uniform_in_box(rng, region.lower, region.upper);
    const Vector y = uniform_in_box(rng, region.lower, region.upper);
    const double dx = (x - y).norm();
    if (dx < 1e-12) continue;
    best = std::max(best, (map(x) - map(y)).norm() / dx);
  }
  return best;
}

}  // namespace lipext::oracle
