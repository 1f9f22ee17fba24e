#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lipext/envelope.hpp"
#include "lipext/types.hpp"

// Brute-force reference implementations used to cross-check the envelope
// engine. They share only the ParabolaFamily coefficients with the engine;
// all evaluation code here is written from the definitions.
namespace lipext::oracle {

struct GridSpec {
  Vector lower;
  Vector upper;
  std::vector<int> resolution;  // nodes per axis, each >= 2

  void validate() const;
};

/// Lower convex hull (monotone chain) of the sampled graph of min_i p_i on a
/// 1D grid; returns hull values at the grid nodes.
std::vector<double> hull_envelope_1d(const ParabolaFamily& fam, const GridSpec& grid);

/// Random search over convex combinations sum lambda_j g(x_j) with
/// sum lambda_j x_j = w and at most dim+1 points, parametrized by candidate
/// supporting slopes. Upper bound on conv(g)(w), converging from above; the
/// trivial one-point combination at w is always included.
double caratheodory_sample(const ParabolaFamily& fam, const Vector& w, std::int64_t trials,
                           std::uint64_t rng_seed);

/// Central finite differences per coordinate.
Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& w, double h);

/// Max pairwise ratio ||F(x)-F(y)|| / ||x-y|| over random pairs in the region.
double sampled_lipschitz(const std::function<Vector(const Vector&)>& map, const GridSpec& region,
                         std::int64_t pairs, std::uint64_t rng_seed);

}  // namespace lipext::oracle
