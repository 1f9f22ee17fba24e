#include "lipext/extensions.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace lipext {

namespace {

std::string pair_str(const ConditionReport& rep) {
  std::ostringstream os;
  os << "worst pair (" << rep.worst_pair.first << ", " << rep.worst_pair.second << "), slack "
     << rep.slack;
  return os.str();
}

MappingDataset transformed_values(const MappingDataset& data, double point_coeff,
                                  double value_coeff) {
  MappingDataset out = data;
  for (std::size_t i = 0; i < data.size(); ++i)
    out.values[i] = value_coeff * data.values[i] + point_coeff * data.points[i];
  return out;
}

}  // namespace

std::string to_string(ExtensionMode mode) {
  switch (mode) {
    case ExtensionMode::C11Jet: return "c11";
    case ExtensionMode::Kirszbraun: return "kirszbraun";
    case ExtensionMode::FirmlyNonexpansive: return "firmly-nonexpansive";
    case ExtensionMode::StronglyBiLipschitz: return "strongly-bilipschitz";
    case ExtensionMode::StronglyConvex: return "strongly-convex";
  }
  return "?";
}

C11JetExtension::C11JetExtension(JetDataset jet, double M, bool force)
    : jet_(std::move(jet)), M_(M) {
  jet_.validate();
  if (!(M_ > 0.0)) throw ValidationError("c11 extension: M must be positive");
  const ConditionReport rep = check_w11(jet_, M_);
  if (!rep.holds && !force)
    throw HypothesisError("c11 extension: W^{1,1} fails at M = " + std::to_string(M_) + ", " +
                          pair_str(rep));
  fam_ = family_from_jet(jet_, M_);
  fam_.hypothesis_ok = rep.holds;
}

ExtensionResult C11JetExtension::operator()(const Vector& w, const QpOptions& opts) const {
  EnvelopeEval env = eval_conv(fam_, w, opts);
  ExtensionResult out;
  out.query = w;
  out.mode = ExtensionMode::C11Jet;
  out.value = env.value - 0.5 * M_ * w.squaredNorm();
  out.gradient = env.gradient - M_ * w;
  out.weights = std::move(env.weights);
  return out;
}

KirszbraunExtension::KirszbraunExtension(MappingDataset data, double M, bool force)
    : data_(std::move(data)), M_(M) {
  data_.validate();
  if (M_ <= 0.0) {
    M_ = data_.size() >= 2 ? lipschitz_constant(data_) : 1.0;
    if (M_ <= 0.0) M_ = 1.0;  // constant data: any positive constant works
  }
  fam_ = family_from_mapping(data_, M_);
  if (!fam_.hypothesis_ok && !force)
    throw HypothesisError("kirszbraun extension: M below the data's Lipschitz constant");
}

ExtensionResult KirszbraunExtension::operator()(const Vector& x, const QpOptions& opts) const {
  if (x.size() != data_.dim_x)
    throw ValidationError("kirszbraun extension: query dimension mismatch");
  Vector w = Vector::Zero(fam_.dim);
  w.head(data_.dim_x) = x;
  EnvelopeEval env = eval_conv(fam_, w, opts);
  ExtensionResult out;
  out.query = x;
  out.mode = ExtensionMode::Kirszbraun;
  out.is_function = false;
  out.mapped = env.gradient.tail(data_.dim_y);
  out.weights = std::move(env.weights);
  return out;
}

FirmlyNonexpansiveExtension::FirmlyNonexpansiveExtension(MappingDataset data, bool force)
    : inner_([&] {
        data.validate();
        if (data.dim_x != data.dim_y)
          throw ValidationError("firmly non-expansive extension: requires dim_x == dim_y");
        const ConditionReport rep = check_firmly_nonexpansive(data);
        if (!rep.holds && !force)
          throw HypothesisError("firmly non-expansive condition fails, " + pair_str(rep));
        // 2G - I is 1-Lipschitz exactly when G is firmly non-expansive
        return KirszbraunExtension(transformed_values(data, -1.0, 2.0), 1.0, true);
      }()) {}

ExtensionResult FirmlyNonexpansiveExtension::operator()(const Vector& x,
                                                        const QpOptions& opts) const {
  ExtensionResult t = inner_(x, opts);
  ExtensionResult out;
  out.query = x;
  out.mode = ExtensionMode::FirmlyNonexpansive;
  out.is_function = false;
  out.mapped = 0.5 * (t.mapped + x);
  out.weights = std::move(t.weights);
  return out;
}

StronglyBiLipschitzExtension::StronglyBiLipschitzExtension(MappingDataset data, double alpha,
                                                           bool force)
    : alpha_(alpha) {
  data.validate();
  if (data.dim_x != data.dim_y)
    throw ValidationError("strongly biLipschitz extension: requires dim_x == dim_y");
  if (!(alpha_ > 0.0 && alpha_ <= 1.0))
    throw ValidationError("strongly biLipschitz extension: alpha must lie in (0, 1]");
  dim_ = data.dim_x;
  if (data.size() >= 2 && !force) {
    const double a = sbilip(data);
    if (a < alpha_ - 1e-9 * (1.0 + std::abs(a))) {
      // locate the worst pair for the message
      std::size_t wi = 0, wj = 1;
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < data.size(); ++i)
        for (std::size_t j = i + 1; j < data.size(); ++j) {
          const Vector dx = data.points[i] - data.points[j];
          const Vector dg = data.values[i] - data.values[j];
          const double r = 2.0 * dx.dot(dg) / (dx.squaredNorm() + dg.squaredNorm());
          if (r < worst) { worst = r; wi = i; wj = j; }
        }
      std::ostringstream os;
      os << "strongly biLipschitz extension: SBilip(data) = " << a << " < alpha = " << alpha_
         << " at pair (" << wi << ", " << wj << ")";
      throw HypothesisError(os.str());
    }
  }
  if (alpha_ == 1.0) {
    // SBilip = 1 means G is the restriction of a translation
    translation_ = true;
    shift_ = data.values[0] - data.points[0];
    for (std::size_t i = 1; i < data.size(); ++i) {
      if ((data.values[i] - data.points[i] - shift_).norm() > 1e-9 && !force)
        throw HypothesisError(
            "strongly biLipschitz extension: alpha = 1 but data is not a translation");
    }
    return;
  }
  const double budget = std::sqrt(1.0 - alpha_ * alpha_) / alpha_;
  inner_ = std::make_unique<KirszbraunExtension>(
      transformed_values(data, -1.0 / alpha_, 1.0), budget, true);
}

ExtensionResult StronglyBiLipschitzExtension::operator()(const Vector& x,
                                                         const QpOptions& opts) const {
  if (x.size() != dim_)
    throw ValidationError("strongly biLipschitz extension: query dimension mismatch");
  ExtensionResult out;
  out.query = x;
  out.mode = ExtensionMode::StronglyBiLipschitz;
  out.is_function = false;
  if (translation_) {
    out.mapped = x + shift_;
    out.weights.lambda = Eigen::VectorXd::Ones(1);
    out.weights.converged = true;
    return out;
  }
  ExtensionResult t = (*inner_)(x, opts);
  out.mapped = t.mapped + x / alpha_;
  out.weights = std::move(t.weights);
  return out;
}

StronglyConvexExtension::StronglyConvexExtension(JetDataset jet, double c, double M, bool force)
    : c_(c), M_(M) {
  jet.validate();
  if (!(M_ > c_)) throw ValidationError("strongly convex extension: requires M > c");
  const ConditionReport rep = check_scw11(jet, c_, M_);
  if (!rep.holds && !force)
    throw HypothesisError("strongly convex extension: SCW^{1,1} fails, " + pair_str(rep));
  // transformed jet is CW^{1,1} with constant M - c; its g has quadratic
  // coefficient (M - c)/2, so the family's M slot is halved after building
  const JetDataset tilde = scw11_to_cw11(jet, c_);
  fam_ = family_from_jet(tilde, M_ - c_);
  fam_.M = 0.5 * (M_ - c_);
  fam_.refresh_gamma();
  fam_.hypothesis_ok = rep.holds;
}

ExtensionResult StronglyConvexExtension::operator()(const Vector& w, const QpOptions& opts) const {
  EnvelopeEval env = eval_conv(fam_, w, opts);
  ExtensionResult out;
  out.query = w;
  out.mode = ExtensionMode::StronglyConvex;
  out.value = env.value + 0.5 * c_ * w.squaredNorm();
  out.gradient = env.gradient + c_ * w;
  out.weights = std::move(env.weights);
  return out;
}

ExtensionResult extend_c11_jet(const JetDataset& jet, double M, const Vector& w, bool force) {
  return C11JetExtension(jet, M, force)(w);
}
ExtensionResult extend_kirszbraun(const MappingDataset& data, double M, const Vector& x,
                                  bool force) {
  return KirszbraunExtension(data, M, force)(x);
}
ExtensionResult extend_firmly_nonexpansive(const MappingDataset& data, const Vector& x,
                                           bool force) {
  return FirmlyNonexpansiveExtension(data, force)(x);
}
ExtensionResult extend_strongly_bilipschitz(const MappingDataset& data, double alpha,
                                            const Vector& x, bool force) {
  return StronglyBiLipschitzExtension(data, alpha, force)(x);
}
ExtensionResult extend_strongly_convex(const JetDataset& jet, double c, double M, const Vector& w,
                                       bool force) {
  return StronglyConvexExtension(jet, c, M, force)(w);
}

}  // namespace lipext
