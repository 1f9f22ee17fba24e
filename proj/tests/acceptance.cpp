// End-to-end acceptance suite: one pass/fail line per criterion, nonzero exit
// on any failure. Self-contained cross-checks (projected gradient, literal
// product-space formula) are implemented locally, independent of the engine.
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "lipext/conditions.hpp"
#include "lipext/envelope.hpp"
#include "lipext/extensions.hpp"
#include "lipext/oracle.hpp"
#include "lipext/qp.hpp"
#include "test_support.hpp"

using namespace lipext;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& title, const std::function<bool()>& body) {
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (exception: ") + e.what() + ")";
  }
  std::printf("[%s] criterion %d: %s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(),
              note.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

Vector vec1(double x) {
  Vector v(1);
  v << x;
  return v;
}

// --- criterion 1: two-parabola closed form --------------------------------

bool two_parabola_closed_form() {
  ParabolaFamily fam;
  fam.M = 1.0;
  fam.dim = 1;
  fam.B.resize(1, 2);
  fam.B << 0.0, -2.0;
  fam.beta.resize(2);
  fam.beta << 0.0, 1.0;
  fam.refresh_gamma();
  for (int k = 0; k <= 500; ++k) {
    const double x = -2.0 + 5.0 * k / 500.0;
    const double value = x <= 0.0 ? x * x : (x >= 1.0 ? (x - 1.0) * (x - 1.0) : 0.0);
    const double slope = x <= 0.0 ? 2.0 * x : (x >= 1.0 ? 2.0 * (x - 1.0) : 0.0);
    const EnvelopeEval ev = eval_conv(fam, vec1(x));
    if (std::abs(ev.value - value) > 1e-8) return false;
    if (std::abs(ev.gradient[0] - slope) > 1e-8) return false;
  }
  return true;
}

// --- criterion 2: Lipschitz extension contract ----------------------------

bool kirszbraun_contract() {
  testing::Rng rng(1001);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int m = 1 + static_cast<int>(rng() % 3);
    const int N = 2 + static_cast<int>(rng() % 24);
    const double lip = 0.4 + 2.0 * (rep + 1) / 20.0;
    const MappingDataset data = testing::random_lipschitz_mapping(rng, n, m, N, lip);
    const KirszbraunExtension ext(data, lip);
    for (std::size_t i = 0; i < data.size(); ++i)
      if ((ext(data.points[i]).mapped - data.values[i]).cwiseAbs().maxCoeff() > 1e-7)
        return false;
    oracle::GridSpec region;
    region.lower = Vector::Constant(n, -4.0);
    region.upper = Vector::Constant(n, 4.0);
    region.resolution = std::vector<int>(n, 2);
    const double sampled = oracle::sampled_lipschitz(
        [&](const Vector& x) { return ext(x).mapped; }, region, 2000, 7 + rep);
    if (sampled > lip * (1.0 + 1e-6)) return false;
  }
  return true;
}

// --- criterion 3: envelope oracle equivalence -----------------------------

bool oracle_equivalence() {
  testing::Rng rng(1003);
  std::uniform_real_distribution<double> u(0.5, 2.5);
  for (int rep = 0; rep < 10; ++rep) {
    const double M = u(rng);
    const ParabolaFamily fam =
        testing::random_family(rng, 1, 2 + static_cast<int>(rng() % 4), M);
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < fam.count(); ++i) {
      const double v = -fam.B(0, i) / (2.0 * fam.M);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    lo -= 2.0;
    hi += 2.0;
    const int nodes = 2001;
    oracle::GridSpec grid;
    grid.lower = Vector::Constant(1, lo);
    grid.upper = Vector::Constant(1, hi);
    grid.resolution = {nodes};
    const std::vector<double> hull = oracle::hull_envelope_1d(fam, grid);
    const double h = (hi - lo) / (nodes - 1);
    for (int k = 0; k < nodes; k += 13) {
      const double x = lo + k * h;
      if (std::abs(eval_conv(fam, vec1(x)).value - hull[k]) > 5.0 * h * h * 2.0 * M)
        return false;
    }
  }
  for (int rep = 0; rep < 5; ++rep) {
    const ParabolaFamily fam =
        testing::random_family(rng, 2, 2 + static_cast<int>(rng() % 4), u(rng));
    for (int q = 0; q < 50; ++q) {
      const Vector w = testing::random_vector(rng, 2);
      const double engine = eval_conv(fam, w).value;
      const double sampled =
          oracle::caratheodory_sample(fam, w, 100000, 40000 + 100 * rep + q);
      if (sampled < engine - 1e-9) return false;
      if (sampled > engine + 1e-2) return false;
    }
  }
  return true;
}

// --- criterion 4: C^{1,1} jet contract -------------------------------------

bool c11_contract() {
  testing::Rng rng(1007);
  std::uniform_real_distribution<double> u(0.6, 2.4);
  for (int rep = 0; rep < 20; ++rep) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    const double M = u(rng);
    const JetDataset jet = testing::random_w11_jet(rng, dim, 3 + static_cast<int>(rng() % 5), M);
    const C11JetExtension ext(jet, M);
    for (std::size_t i = 0; i < jet.size(); ++i) {
      const ExtensionResult r = ext(jet.points[i]);
      if (std::abs(r.value - jet.values[i]) > 1e-7) return false;
      if ((r.gradient - jet.gradients[i]).cwiseAbs().maxCoeff() > 1e-7) return false;
    }
    oracle::GridSpec region;
    region.lower = Vector::Constant(dim, -4.0);
    region.upper = Vector::Constant(dim, 4.0);
    region.resolution = std::vector<int>(dim, 2);
    const double sampled = oracle::sampled_lipschitz(
        [&](const Vector& x) { return ext(x).gradient; }, region, 1000, 11 + rep);
    if (sampled > M * (1.0 + 1e-6)) return false;
    for (int t = 0; t < 5; ++t) {
      const Vector x = testing::random_vector(rng, dim, 3.0);
      const Vector fd =
          oracle::fd_gradient([&](const Vector& q) { return ext(q).value; }, x, 1e-4);
      if ((fd - ext(x).gradient).cwiseAbs().maxCoeff() > 1e-5) return false;
    }
  }
  return true;
}

// --- criterion 5: firmly non-expansive property ----------------------------

// literal product-space formula for the firmly non-expansive case:
// g(x,y) = min_z { 2<G(z), y> + 1/2 ||z - (x+y)||^2 } + 1/2 ||x-y||^2,
// extension = 1/2 (x + y-block of grad conv(g) at (x, 0)). Expanding the
// squares gives one parabola per data point with leading coefficient 1.
Vector literal_firmly_extension(const MappingDataset& data, const Vector& x) {
  const int n = data.dim_x;
  ParabolaFamily fam;
  fam.M = 1.0;
  fam.dim = 2 * n;
  fam.B.resize(2 * n, static_cast<int>(data.size()));
  fam.beta.resize(static_cast<int>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Vector& z = data.points[i];
    fam.B.col(static_cast<int>(i)).head(n) = -z;
    fam.B.col(static_cast<int>(i)).tail(n) = 2.0 * data.values[i] - z;
    fam.beta[static_cast<int>(i)] = 0.5 * z.squaredNorm();
  }
  fam.refresh_gamma();
  Vector w = Vector::Zero(2 * n);
  w.head(n) = x;
  const EnvelopeEval ev = eval_conv(fam, w);
  return 0.5 * (x + ev.gradient.tail(n));
}

bool firmly_nonexpansive_property() {
  testing::Rng rng(1009);
  for (int rep = 0; rep < 10; ++rep) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    const MappingDataset data =
        testing::random_firmly_nonexpansive(rng, dim, 3 + static_cast<int>(rng() % 5));
    const FirmlyNonexpansiveExtension ext(data);
    for (int t = 0; t < 2000 / 10; ++t) {
      const Vector a = testing::random_vector(rng, dim, 4.0);
      const Vector b = testing::random_vector(rng, dim, 4.0);
      const Vector d = ext(a).mapped - ext(b).mapped;
      if (d.dot(a - b) < d.squaredNorm() - 1e-8) return false;
    }
    for (int q = 0; q < 10; ++q) {
      const Vector x = testing::random_vector(rng, dim, 4.0);
      if ((literal_firmly_extension(data, x) - ext(x).mapped).cwiseAbs().maxCoeff() > 1e-7)
        return false;
    }
  }
  return true;
}

// --- criterion 6: strong biLipschitz preservation --------------------------

double sampled_sbilip(const std::function<Vector(const Vector&)>& map, int dim, int pairs,
                      testing::Rng& rng) {
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < pairs; ++t) {
    const Vector a = testing::random_vector(rng, dim, 3.0);
    const Vector b = testing::random_vector(rng, dim, 3.0);
    if ((a - b).norm() < 1e-9) continue;
    const Vector d = map(a) - map(b);
    worst = std::min(worst,
                     2.0 * d.dot(a - b) / ((a - b).squaredNorm() + d.squaredNorm()));
  }
  return worst;
}

bool sbilip_preservation() {
  testing::Rng rng(1013);

  // rotation by pi/4 on three points, alpha = cos(pi/4)
  {
    const double alpha = std::sqrt(0.5);
    MappingDataset data;
    data.dim_x = data.dim_y = 2;
    const double px[3] = {1.0, 0.0, -1.0}, py[3] = {0.0, 1.0, 0.0};
    for (int k = 0; k < 3; ++k) {
      Vector p(2), v(2);
      p << px[k], py[k];
      v << alpha * p[0] - alpha * p[1], alpha * p[0] + alpha * p[1];
      data.points.push_back(p);
      data.values.push_back(v);
    }
    if (std::abs(sbilip(data) - alpha) > 1e-9) return false;
    const StronglyBiLipschitzExtension ext(data, alpha);
    if (sampled_sbilip([&](const Vector& x) { return ext(x).mapped; }, 2, 500, rng) <
        alpha - 1e-6)
      return false;
  }

  std::uniform_real_distribution<double> u(0.3, 0.9);
  for (int rep = 0; rep < 5; ++rep) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    const double alpha = u(rng);
    const MappingDataset data =
        testing::random_strongly_bilipschitz(rng, dim, 3 + static_cast<int>(rng() % 4), alpha);
    const StronglyBiLipschitzExtension ext(data, alpha);
    if (sampled_sbilip([&](const Vector& x) { return ext(x).mapped; }, dim, 500, rng) <
        alpha - 1e-6)
      return false;
  }

  // circle plus collapsed exterior point: biLipschitz but not strongly so
  MappingDataset circle;
  circle.dim_x = circle.dim_y = 2;
  for (int k = 0; k < 8; ++k) {
    const double a = 2.0 * M_PI * k / 8.0;
    Vector p(2);
    p << std::cos(a), std::sin(a);
    circle.points.push_back(p);
    circle.values.push_back(p);
  }
  Vector p(2);
  p << 2.0, 0.0;
  circle.points.push_back(p);
  circle.values.push_back(Vector::Zero(2));
  if (sbilip(circle) >= 0.0) return false;
  try {
    StronglyBiLipschitzExtension refused(circle, 0.5);
    return false;
  } catch (const HypothesisError&) {
  }
  return true;
}

// --- criterion 7: strongly convex suite ------------------------------------

bool strongly_convex_suite() {
  testing::Rng rng(1019);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    const double c = 0.2 + 0.8 * u(rng);
    const double M = c + 0.5 + 1.5 * u(rng);
    const JetDataset jet = testing::random_scw11_jet(rng, dim, 3 + static_cast<int>(rng() % 4), c, M);
    const StronglyConvexExtension ext(jet, c, M);
    for (std::size_t i = 0; i < jet.size(); ++i) {
      const ExtensionResult r = ext(jet.points[i]);
      if (std::abs(r.value - jet.values[i]) > 1e-7) return false;
      if ((r.gradient - jet.gradients[i]).cwiseAbs().maxCoeff() > 1e-7) return false;
    }
    JetDataset resampled;
    resampled.dim = dim;
    resampled.points = testing::random_distinct_points(rng, dim, 8, 3.0);
    for (const auto& q : resampled.points) {
      const ExtensionResult r = ext(q);
      resampled.values.push_back(r.value);
      resampled.gradients.push_back(r.gradient);
    }
    if (!check_scw11(resampled, c, M, 1e-7).holds) return false;
    for (int t = 0; t < 20; ++t) {
      const Vector a = testing::random_vector(rng, dim, 3.0);
      const Vector b = testing::random_vector(rng, dim, 3.0);
      const Vector m = 0.5 * (a + b);
      const auto ra = ext(a), rb = ext(b), rm = ext(m);
      const double ha = ra.value - 0.5 * c * a.squaredNorm();
      const double hb = rb.value - 0.5 * c * b.squaredNorm();
      const double hm = rm.value - 0.5 * c * m.squaredNorm();
      if (hm > 0.5 * (ha + hb) + 1e-8) return false;
      if ((ra.gradient - rb.gradient).norm() >
          M * (a - b).norm() * (1.0 + 1e-6) + 1e-12)
        return false;
    }
  }

  // maximality against quadratic generators with the same constants
  for (int rep = 0; rep < 5; ++rep) {
    const int dim = 1 + static_cast<int>(rng() % 2);
    const double c = 0.3 + 0.6 * u(rng);
    const double M = c + 1.0;
    const Vector x0 = testing::random_vector(rng, dim);
    const Vector g = testing::random_vector(rng, dim);
    const auto H = [&](const Vector& x) {
      return 0.5 * c * (x - x0).squaredNorm() + g.dot(x);
    };
    JetDataset jet;
    jet.dim = dim;
    jet.points = testing::random_distinct_points(rng, dim, 4);
    for (const auto& q : jet.points) {
      jet.values.push_back(H(q));
      jet.gradients.push_back(c * (q - x0) + g);
    }
    const StronglyConvexExtension ext(jet, c, M);
    for (int t = 0; t < 30; ++t) {
      const Vector q = testing::random_vector(rng, dim, 4.0);
      if (ext(q).value < H(q) - 1e-8) return false;
    }
  }

  // transform equivalence on 100 random (not necessarily feasible) jets
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    JetDataset jet;
    jet.dim = dim;
    jet.points = testing::random_distinct_points(rng, dim, 4);
    for (int i = 0; i < 4; ++i) {
      jet.values.push_back(v(rng));
      jet.gradients.push_back(testing::random_vector(rng, dim));
    }
    const double c = v(rng);
    const double M = c + 0.3 + 1.5 * u(rng);
    const ConditionReport direct = check_scw11(jet, c, M);
    const ConditionReport via = check_cw11(scw11_to_cw11(jet, c), M - c);
    if (direct.holds != via.holds) return false;
    if (std::abs(direct.slack - via.slack) > 1e-10 * (1.0 + std::abs(direct.slack)))
      return false;
  }
  return true;
}

// --- criterion 8: condition algebra -----------------------------------------

bool condition_algebra() {
  testing::Rng rng(1021);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const int dim = 1 + static_cast<int>(rng() % 3);
    const double c = 0.1 + 0.9 * u(rng);
    const double M = c + 0.4 + 1.6 * u(rng);
    const JetDataset jet =
        testing::random_scw11_jet(rng, dim, 3 + static_cast<int>(rng() % 4), c, M);
    if (!check_scw11(jet, c, M).holds) return false;
    for (std::size_t i = 0; i < jet.size(); ++i)
      for (std::size_t j = 0; j < jet.size(); ++j) {
        if (i == j) continue;
        const Vector dx = jet.points[i] - jet.points[j];
        const Vector dg = jet.gradients[i] - jet.gradients[j];
        const double tol = 1e-8 * (1.0 + dx.squaredNorm() + dg.squaredNorm());
        // (c+M) <dg, dx> >= cM ||dx||^2 + ||dg||^2
        if ((c + M) * dg.dot(dx) < c * M * dx.squaredNorm() + dg.squaredNorm() - tol)
          return false;
        // pairwise gradient ratios lie in [c, M]
        const double ratio = dg.norm() / dx.norm();
        if (ratio < c - 1e-8 || ratio > M + 1e-8) return false;
      }
    // gradient-as-mapping is strongly biLipschitz with an explicit bound
    MappingDataset grad_map;
    grad_map.dim_x = grad_map.dim_y = dim;
    grad_map.points = jet.points;
    grad_map.values = jet.gradients;
    if (sbilip(grad_map) < 2.0 / (c + M) * std::min(1.0, c * M) - 1e-8) return false;

    // the (-M', M') two-constant condition is the single-constant condition
    const double Mp = 0.3 + 2.0 * u(rng);
    const ConditionReport one = check_w11(jet, Mp);
    const ConditionReport two = check_scw11(jet, -Mp, Mp);
    if (one.holds != two.holds) return false;
    if (std::abs(one.slack - two.slack) > 1e-10 * (1.0 + std::abs(one.slack))) return false;
  }
  return true;
}

// --- criterion 9: QP certification ------------------------------------------

Eigen::VectorXd pg_project(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.rbegin(), sorted.rend());
  double cumsum = 0.0, tau = sorted[0] - 1.0;
  for (int k = 0; k < n; ++k) {
    cumsum += sorted[k];
    const double t = (cumsum - 1.0) / (k + 1);
    if (sorted[k] > t) tau = t;
  }
  Eigen::VectorXd out(n);
  for (int k = 0; k < n; ++k) out[k] = std::max(v[k] - tau, 0.0);
  return out;
}

bool qp_certification() {
  testing::Rng rng(1031);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const int N = 2 + static_cast<int>(rng() % 49);
    const int d = 1 + static_cast<int>(rng() % 5);
    Eigen::MatrixXd B(d, N);
    Eigen::VectorXd gamma(N);
    for (int i = 0; i < N; ++i) {
      B.col(i) = testing::random_vector(rng, d);
      gamma[i] = u(rng);
    }
    const Vector w = testing::random_vector(rng, d);
    const auto sol = solve_simplex_qp(B, 1.0, w, gamma);
    if (!sol.converged || sol.kkt_residual > 1e-9) return false;

    // accelerated projected gradient reference, best objective seen
    const Eigen::MatrixXd H = B.transpose() * B / 2.0;
    const Eigen::VectorXd lin = B.transpose() * w - gamma;
    const double L =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H).eigenvalues().maxCoeff() + 1e-12;
    const auto value = [&](const Eigen::VectorXd& v) { return lin.dot(v) + 0.5 * v.dot(H * v); };
    Eigen::VectorXd x = Eigen::VectorXd::Constant(N, 1.0 / N);
    Eigen::VectorXd y = x, x_prev = x;
    double t = 1.0, best = value(x);
    for (int it = 0; it < 100000; ++it) {
      x_prev = x;
      x = pg_project(y - (lin + H * y) / L);
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      y = x + ((t - 1.0) / t_next) * (x - x_prev);
      t = t_next;
      best = std::min(best, value(x));
    }
    const double ref = w.squaredNorm() + best;
    if (std::abs(sol.objective - ref) > 1e-8 * (1.0 + std::abs(ref))) return false;
  }
  return true;
}

}  // namespace

int main() {
  run_criterion(1, "two-parabola envelope matches the closed form", two_parabola_closed_form);
  run_criterion(2, "Lipschitz extension interpolates and preserves the constant",
                kirszbraun_contract);
  run_criterion(3, "envelope engine agrees with hull and sampling oracles",
                oracle_equivalence);
  run_criterion(4, "C^{1,1} jet extension interpolates with M-Lipschitz gradient",
                c11_contract);
  run_criterion(5, "firmly non-expansive extension, literal vs transform formulas",
                firmly_nonexpansive_property);
  run_criterion(6, "strongly biLipschitz constant preserved; counterexample rejected",
                sbilip_preservation);
  run_criterion(7, "strongly convex extension suite and transform equivalence",
                strongly_convex_suite);
  run_criterion(8, "two-constant condition algebra over random feasible jets",
                condition_algebra);
  run_criterion(9, "QP solutions carry KKT certificates and match projected gradient",
                qp_certification);
  if (g_failures == 0) {
    std::cout << "acceptance: all 9 criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << g_failures << " criteria FAILED\n";
  return 1;
}
