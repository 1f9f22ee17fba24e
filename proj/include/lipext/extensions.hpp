#pragma once

#include <memory>
#include <string>

#include "lipext/conditions.hpp"
#include "lipext/envelope.hpp"
#include "lipext/types.hpp"

namespace lipext {

enum class ExtensionMode {
  C11Jet,
  Kirszbraun,
  FirmlyNonexpansive,
  StronglyBiLipschitz,
  StronglyConvex,
};

std::string to_string(ExtensionMode mode);

struct ExtensionResult {
  Vector query;
  ExtensionMode mode = ExtensionMode::C11Jet;
  bool is_function = true;  // value/gradient valid; otherwise `mapped` is
  double value = 0.0;
  Vector gradient;
  Vector mapped;  // extension value in Y for mapping modes
  SimplexWeights weights;
};

/// C^{1,1} extension of a jet: F = conv(g) - (M/2)||.||^2 with g built from
/// one parabola per data point. Requires the W^{1,1} condition at M unless
/// `force`.
class C11JetExtension {
 public:
  C11JetExtension(JetDataset jet, double M, bool force = false);
  ExtensionResult operator()(const Vector& w, const QpOptions& opts = {}) const;
  double M() const { return M_; }

 private:
  JetDataset jet_;
  double M_;
  ParabolaFamily fam_;
};

/// Lipschitz-constant-preserving extension of a mapping: the Y-partial
/// gradient of the product-space envelope at (x, 0). Pass M <= 0 to use the
/// data's Lipschitz constant.
class KirszbraunExtension {
 public:
  KirszbraunExtension(MappingDataset data, double M = 0.0, bool force = false);
  ExtensionResult operator()(const Vector& x, const QpOptions& opts = {}) const;
  double M() const { return M_; }
  int dim_x() const { return data_.dim_x; }
  int dim_y() const { return data_.dim_y; }

 private:
  MappingDataset data_;
  double M_;
  ParabolaFamily fam_;
};

/// Extension of a firmly non-expansive G via the 1-Lipschitz transform
/// 2G - I: G~ = (T + id)/2 where T is the Kirszbraun extension of 2G - I.
class FirmlyNonexpansiveExtension {
 public:
  explicit FirmlyNonexpansiveExtension(MappingDataset data, bool force = false);
  ExtensionResult operator()(const Vector& x, const QpOptions& opts = {}) const;

 private:
  KirszbraunExtension inner_;
};

/// Extension of a strongly biLipschitz G with constant alpha in (0, 1]:
/// G~ = T + (1/alpha) id where T extends G - (1/alpha) id with Lipschitz
/// budget sqrt(1 - alpha^2)/alpha. alpha = 1 is the exact translation case.
class StronglyBiLipschitzExtension {
 public:
  StronglyBiLipschitzExtension(MappingDataset data, double alpha, bool force = false);
  ExtensionResult operator()(const Vector& x, const QpOptions& opts = {}) const;
  double alpha() const { return alpha_; }

 private:
  double alpha_;
  bool translation_ = false;
  Vector shift_;  // translation case only
  int dim_ = 0;
  std::unique_ptr<KirszbraunExtension> inner_;
};

/// Strongly convex extension: F = conv(g) + (c/2)||.||^2 through the
/// (f - (c/2)||.||^2, G - c id) transform; requires SCW^{1,1} with (c, M)
/// unless `force`.
class StronglyConvexExtension {
 public:
  StronglyConvexExtension(JetDataset jet, double c, double M, bool force = false);
  ExtensionResult operator()(const Vector& w, const QpOptions& opts = {}) const;

 private:
  double c_;
  double M_;
  ParabolaFamily fam_;
};

// single-query conveniences
ExtensionResult extend_c11_jet(const JetDataset& jet, double M, const Vector& w,
                               bool force = false);
ExtensionResult extend_kirszbraun(const MappingDataset& data, double M, const Vector& x,
                                  bool force = false);
ExtensionResult extend_firmly_nonexpansive(const MappingDataset& data, const Vector& x,
                                           bool force = false);
ExtensionResult extend_strongly_bilipschitz(const MappingDataset& data, double alpha,
                                            const Vector& x, bool force = false);
ExtensionResult extend_strongly_convex(const JetDataset& jet, double c, double M,
                                       const Vector& w, bool force = false);

}  // namespace lipext
