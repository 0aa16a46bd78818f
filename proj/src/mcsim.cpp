#include "hypvol/mcsim.hpp"

#include "hypvol/errors.hpp"
#include "hypvol/parallel.hpp"
#include "hypvol/specfun.hpp"

#include <atomic>
#include <cmath>

namespace hypvol {

void SampleConfig::validate() const {
  require(n_samples >= 1, "n_samples must be at least 1");
  require(streams >= 1, "streams must be at least 1");
}

Point sample_beta_point(int d, double beta, Rng& rng) {
  require(d >= 1, "sample_beta_point: dimension must be positive");
  require(beta >= -1 && std::isfinite(beta), "sample_beta_point: beta must be >= -1");
  Point x(d);
  double r2;
  do {
    for (int i = 0; i < d; ++i) x(i) = rng.normal();
    r2 = x.squaredNorm();
  } while (r2 == 0.0);
  x /= std::sqrt(r2);
  if (beta == -1) return x;
  double g1 = rng.gamma(0.5 * d);
  double g2 = rng.gamma(beta + 1);
  double t = g1 / (g1 + g2);
  return x * std::sqrt(t);
}

McEstimate run_estimator(const SampleConfig& cfg, const std::function<double(Rng&)>& sample) {
  cfg.validate();
  const long n = cfg.n_samples;
  const int streams = static_cast<int>(std::min<long>(cfg.streams, n));
  std::vector<double> values(n);
  parallel_for(static_cast<std::size_t>(streams), [&](std::size_t s) {
    Rng rng(cfg.seed, s);
    long lo = n * static_cast<long>(s) / streams;
    long hi = n * static_cast<long>(s + 1) / streams;
    for (long i = lo; i < hi; ++i) values[i] = sample(rng);
  });
  McEstimate e;
  e.n = n;
  e.seed = cfg.seed;
  e.mean = pairwise_sum(values) / n;
  if (n > 1) {
    std::vector<double> sq(n);
    for (long i = 0; i < n; ++i) sq[i] = (values[i] - e.mean) * (values[i] - e.mean);
    e.stderr_ = std::sqrt(pairwise_sum(sq) / (n - 1) / n);
  }
  return e;
}

McEstimate mc_absorption(const BetaSpec& spec, double beta, const SampleConfig& cfg) {
  spec.validate();
  require(beta > -1, "mc_absorption: exponent must exceed -1");
  double scale = 1.0 / c_d_beta(spec.d, beta);
  return run_estimator(cfg, [&](Rng& rng) {
    Point x0 = sample_beta_point(spec.d, beta, rng);
    PointList pts;
    for (double b : spec.betas) pts.push_back(sample_beta_point(spec.d, b, rng));
    return contains(pts, x0) ? scale : 0.0;
  });
}

double ideal_polytope3_volume(const PointList& pts) {
  auto faces = hull_d3(pts);
  int apex = faces.front()[0];
  for (const auto& f : faces)
    for (int v : f) apex = std::min(apex, v);
  Eigen::Vector3d a = pts[apex];
  double vol = 0.0;
  for (const auto& f : faces) {
    if (f[0] == apex || f[1] == apex || f[2] == apex) continue;
    vol += ideal_tetra_volume(a, pts[f[0]], pts[f[1]], pts[f[2]]);
  }
  return vol;
}

McEstimate mc_ideal_polytope3_volume(int n, const SampleConfig& cfg) {
  require(n >= 4, "mc_ideal_polytope3_volume: need n >= 4");
  std::atomic<long> resampled{0};
  auto e = run_estimator(cfg, [&](Rng& rng) {
    for (;;) {
      PointList pts;
      for (int i = 0; i < n; ++i) pts.push_back(sample_beta_point(3, -1, rng));
      try {
        return ideal_polytope3_volume(pts);
      } catch (const DegenerateHullError&) {
        ++resampled;
      } catch (const DomainError&) {
        ++resampled;
      }
    }
  });
  e.resampled = resampled;
  return e;
}

McEstimate mc_polygon_area(const BetaSpec& spec, const SampleConfig& cfg) {
  spec.validate();
  require(spec.d == 2, "mc_polygon_area: dimension must be 2");
  std::atomic<long> resampled{0};
  auto e = run_estimator(cfg, [&](Rng& rng) {
    for (;;) {
      PointList pts;
      for (double b : spec.betas) pts.push_back(sample_beta_point(2, b, rng));
      try {
        PointList cycle;
        for (int i : hull_d2(pts)) cycle.push_back(pts[i]);
        return hyp_area_polygon_d2(cycle);
      } catch (const DegenerateHullError&) {
        ++resampled;
      }
    }
  });
  e.resampled = resampled;
  return e;
}

namespace {

double simplex_sample(const PointList& v, double euclid_vol, Rng& rng) {
  const int d = static_cast<int>(v[0].size());
  std::vector<double> w(d + 1);
  double s = 0.0;
  for (auto& x : w) {
    x = -std::log(rng.uniform());
    s += x;
  }
  Point x = Point::Zero(d);
  for (int i = 0; i <= d; ++i) x += (w[i] / s) * v[i];
  return euclid_vol * std::pow(1 - x.squaredNorm(), -0.5 * (d + 1));
}

}  // namespace

McEstimate hyp_volume_simplex_quadrature(const PointList& vertices, const SampleConfig& cfg) {
  require(!vertices.empty(), "hyp_volume_simplex_quadrature: no vertices");
  const int d = static_cast<int>(vertices[0].size());
  require(d == 2 || d == 3, "hyp_volume_simplex_quadrature: dimension must be 2 or 3");
  for (const auto& v : vertices)
    require(v.norm() <= 1 - 1e-9, "ideal vertex: use the Gauss-Bonnet or Lobachevsky oracle");
  double vol = simplex_volume(vertices);
  return run_estimator(cfg, [&](Rng& rng) { return simplex_sample(vertices, vol, rng); });
}

McEstimate mc_simplex_volume(const BetaSpec& spec, const SampleConfig& cfg) {
  spec.validate();
  require(spec.d == 2 || spec.d == 3, "mc_simplex_volume: dimension must be 2 or 3");
  require(static_cast<int>(spec.n()) == spec.d + 1, "mc_simplex_volume: need exactly d+1 points");
  for (double b : spec.betas) require(b > -1, "mc_simplex_volume: ideal vertices are not supported");
  return run_estimator(cfg, [&](Rng& rng) {
    PointList v;
    for (double b : spec.betas) v.push_back(sample_beta_point(spec.d, b, rng));
    return simplex_sample(v, simplex_volume(v), rng);
  });
}

}  // namespace hypvol
