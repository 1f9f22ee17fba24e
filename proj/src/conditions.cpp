#include "lipext/conditions.hpp"

#include <cmath>
#include <functional>

namespace lipext {

namespace {

struct PairTerm {
  double slack;
  double scale;  // largest magnitude entering the inequality for this pair
};

// Minimum slack over ordered pairs (i, j), i != j, lexicographic tie-break.
template <typename F>
ConditionReport reduce_pairs(std::size_t n, double tol, F&& term) {
  ConditionReport rep;
  double scale = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const PairTerm t = term(i, j);
      scale = std::max(scale, t.scale);
      if (!any || t.slack < rep.slack) {
        rep.slack = t.slack;
        rep.worst_pair = {i, j};
        any = true;
      }
    }
  }
  rep.tolerance_used = tol >= 0.0 ? tol : 1e-9 * (1.0 + scale);
  rep.holds = rep.slack >= -rep.tolerance_used;
  return rep;
}

double scw11_slack(const JetDataset& jet, double c, double M, std::size_t i, std::size_t j,
                   double& scale) {
  const Vector dx = jet.points[i] - jet.points[j];
  const Vector dg = jet.gradients[i] - jet.gradients[j];
  const double t1 = jet.gradients[j].dot(dx);
  const double t2 = c / (M - c) * dg.dot(-dx);
  const double t3 = c * M / (2.0 * (M - c)) * dx.squaredNorm();
  const double t4 = dg.squaredNorm() / (2.0 * (M - c));
  scale = std::max({std::abs(jet.values[i]), std::abs(jet.values[j]), std::abs(t1), std::abs(t2),
                    std::abs(t3), std::abs(t4)});
  return jet.values[i] - (jet.values[j] + t1 + t2 + t3 + t4);
}

}  // namespace

ConditionReport check_w11(const JetDataset& jet, double M, double tol) {
  jet.validate();
  if (M <= 0.0) throw ValidationError("check_w11: M must be positive");
  return reduce_pairs(jet.size(), tol, [&](std::size_t i, std::size_t j) {
    const Vector dxji = jet.points[j] - jet.points[i];
    const double t1 = 0.5 * (jet.gradients[i] + jet.gradients[j]).dot(dxji);
    const double t2 = 0.25 * M * dxji.squaredNorm();
    const double t3 = (jet.gradients[i] - jet.gradients[j]).squaredNorm() / (4.0 * M);
    const double slack = jet.values[i] + t1 + t2 - t3 - jet.values[j];
    const double scale = std::max({std::abs(jet.values[i]), std::abs(jet.values[j]), std::abs(t1),
                                   std::abs(t2), std::abs(t3)});
    return PairTerm{slack, scale};
  });
}

ConditionReport check_cw11(const JetDataset& jet, double M, double tol) {
  jet.validate();
  if (M <= 0.0) throw ValidationError("check_cw11: M must be positive");
  return reduce_pairs(jet.size(), tol, [&](std::size_t i, std::size_t j) {
    const Vector dx = jet.points[i] - jet.points[j];
    const double t1 = jet.gradients[j].dot(dx);
    const double t2 = (jet.gradients[i] - jet.gradients[j]).squaredNorm() / (2.0 * M);
    const double slack = jet.values[i] - (jet.values[j] + t1 + t2);
    const double scale = std::max({std::abs(jet.values[i]), std::abs(jet.values[j]), std::abs(t1),
                                   std::abs(t2)});
    return PairTerm{slack, scale};
  });
}

ConditionReport check_scw11(const JetDataset& jet, double c, double M, double tol) {
  jet.validate();
  if (!(M > c)) throw ValidationError("check_scw11: requires M > c");
  return reduce_pairs(jet.size(), tol, [&](std::size_t i, std::size_t j) {
    double scale = 0.0;
    const double slack = scw11_slack(jet, c, M, i, j, scale);
    return PairTerm{slack, scale};
  });
}

ConditionReport check_firmly_nonexpansive(const MappingDataset& data, double tol) {
  data.validate();
  if (data.dim_x != data.dim_y)
    throw ValidationError("check_firmly_nonexpansive: requires dim_x == dim_y");
  return reduce_pairs(data.size(), tol, [&](std::size_t i, std::size_t j) {
    const Vector dx = data.points[i] - data.points[j];
    const Vector dg = data.values[i] - data.values[j];
    const double t1 = dg.dot(dx);
    const double t2 = dg.squaredNorm();
    return PairTerm{t1 - t2, std::max(std::abs(t1), std::abs(t2))};
  });
}

double sbilip(const MappingDataset& data) {
  data.validate();
  if (data.dim_x != data.dim_y) throw ValidationError("sbilip: requires dim_x == dim_y");
  if (data.size() < 2)
    throw ValidationError("sbilip: undefined on fewer than 2 points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = i + 1; j < data.size(); ++j) {
      const Vector dx = data.points[i] - data.points[j];
      const Vector dg = data.values[i] - data.values[j];
      const double ratio = 2.0 * dx.dot(dg) / (dx.squaredNorm() + dg.squaredNorm());
      best = std::min(best, ratio);
    }
  }
  return best;
}

double bilip_bound_from_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ValidationError("bilip_bound_from_alpha: alpha must lie in (0, 1]");
  return 1.0 / alpha + std::sqrt(std::max(0.0, 1.0 / (alpha * alpha) - 1.0));
}

double minimal_m(const JetDataset& jet, JetCondition condition, double tol) {
  jet.validate();
  if (!(tol > 0.0)) throw ValidationError("minimal_m: tol must be positive");
  const auto holds = [&](double M) {
    return condition == JetCondition::W11 ? check_w11(jet, M).holds : check_cw11(jet, M).holds;
  };

  // Lip(G) is a lower bound for any admissible M.
  double lo = 1e-12;
  for (std::size_t i = 0; i < jet.size(); ++i)
    for (std::size_t j = i + 1; j < jet.size(); ++j)
      lo = std::max(lo, (jet.gradients[i] - jet.gradients[j]).norm() /
                            (jet.points[i] - jet.points[j]).norm());

  if (holds(lo)) return lo;
  double hi = lo;
  constexpr double kCap = 1e12;
  while (!holds(hi)) {
    hi *= 2.0;
    if (hi > kCap)
      throw HypothesisError("minimal_m: condition does not hold for any M below 1e12");
  }
  double fail = hi / 2.0;
  while (hi - fail > tol * hi) {
    const double mid = 0.5 * (fail + hi);
    (holds(mid) ? hi : fail) = mid;
  }
  return hi;
}

JetDataset scw11_to_cw11(const JetDataset& jet, double c) {
  jet.validate();
  JetDataset out = jet;
  for (std::size_t i = 0; i < jet.size(); ++i) {
    out.values[i] = jet.values[i] - 0.5 * c * jet.points[i].squaredNorm();
    out.gradients[i] = jet.gradients[i] - c * jet.points[i];
  }
  return out;
}

}  // namespace lipext
