#pragma once

#include "hypvol/expect.hpp"
#include "hypvol/geometry.hpp"
#include "hypvol/rng.hpp"

#include <cstdint>
#include <functional>

namespace hypvol {

struct SampleConfig {
  std::uint64_t seed = 0;
  long n_samples = 10000;
  int streams = 8;

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long n = 0;
  long resampled = 0;  // degenerate hulls that were redrawn
  std::uint64_t seed = 0;
};

/// Point with density ∝ (1-|x|²)^β in the unit ball; β = -1 gives the uniform law on the sphere.
Point sample_beta_point(int d, double beta, Rng& rng);

/// Mean and standard error of per-sample values produced by sample(rng, index).
/// Sample i always uses stream i·streams/n_samples, so results do not depend on the thread count.
McEstimate run_estimator(const SampleConfig& cfg, const std::function<double(Rng&)>& sample);

/// E ∫_P (1-|x|²)^β dx through the hit rate of an extra β point.
McEstimate mc_absorption(const BetaSpec& spec, double beta, const SampleConfig& cfg);

/// Expected volume of the hull of n uniform points on the sphere (sum of ideal tetrahedra).
McEstimate mc_ideal_polytope3_volume(int n, const SampleConfig& cfg);
/// Volume of one ideal polytope: cone from the first hull vertex over the remaining facets.
double ideal_polytope3_volume(const PointList& sphere_points);

/// Hyperbolic area of the hull of beta points in the disk.
McEstimate mc_polygon_area(const BetaSpec& spec, const SampleConfig& cfg);

/// ∫ over the simplex of (1-|x|²)^{-(d+1)/2}, by uniform sampling of the simplex.
McEstimate hyp_volume_simplex_quadrature(const PointList& vertices, const SampleConfig& cfg);

/// Expected hyperbolic volume of a random beta simplex, one interior sample per simplex.
McEstimate mc_simplex_volume(const BetaSpec& spec, const SampleConfig& cfg);

}  // namespace hypvol
