#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hypvol/mcsim.hpp"
#include "hypvol/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

using namespace hypvol;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {

Point pt(std::initializer_list<double> xs) {
  Point p(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) p(i++) = x;
  return p;
}

Eigen::Vector3d unit(double x, double y, double z) { return Eigen::Vector3d(x, y, z).normalized(); }

}  // namespace

TEST_CASE("Philox known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("uniform and gamma draws") {
  Rng rng(42, 3);
  double s = 0, s2 = 0;
  const int n = 200000;
  int out_of_range = 0;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    out_of_range += !(u > 0 && u < 1);
    s += u;
  }
  CHECK(out_of_range == 0);
  CHECK(std::fabs(s / n - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
  for (double a : {0.05, 0.7, 1.0, 3.5}) {
    s = s2 = 0;
    for (int i = 0; i < n; ++i) {
      double g = rng.gamma(a);
      s += g;
      s2 += g * g;
    }
    double mean = s / n, var = s2 / n - mean * mean;
    INFO("shape " << a);
    CHECK(std::fabs(mean - a) < 4 * std::sqrt(a / n));
    CHECK(var == Approx(a).epsilon(0.05));
  }
  Rng a(7, 0), b(7, 0), c(7, 1);
  CHECK(a.next_u32() == b.next_u32());
  CHECK(a.next_u32() != c.next_u32());
}

TEST_CASE("beta point sampler") {
  Rng rng(1, 0);
  for (int d : {2, 3, 5}) {
    Point x = sample_beta_point(d, -1, rng);
    CHECK(std::fabs(x.norm() - 1) <= 1e-15);
  }
  const int n = 1000000;
  for (double beta : {0.0, 50.0}) {
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      double r2 = sample_beta_point(2, beta, rng).squaredNorm();
      s += r2;
      s2 += r2 * r2;
    }
    double mean = s / n;
    double se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::fabs(mean - 1.0 / (2 + beta)) <= 3 * se);
  }
  Point y = sample_beta_point(3, -0.999, rng);
  CHECK(y.norm() <= 1.0);
}

TEST_CASE("containment") {
  PointList simplex = {pt({0, 0}), pt({1, 0}), pt({0, 1})};
  CHECK(contains(simplex, pt({1.0 / 3, 1.0 / 3})));
  CHECK(contains(simplex, pt({1, 0})));
  CHECK(contains(simplex, pt({0.5, 0.5})));
  CHECK_FALSE(contains(simplex, pt({2, 2})));
  CHECK_FALSE(contains(simplex, pt({0.6, 0.6})));
  CHECK_FALSE(contains(simplex, pt({-1e-6, 0.5})));
  // degenerate: collinear points decide membership on their segment
  PointList line = {pt({0, 0}), pt({1, 1}), pt({2, 2})};
  CHECK(contains(line, pt({0.5, 0.5})));
  CHECK_FALSE(contains(line, pt({0.5, 0.6})));
  CHECK_FALSE(contains(line, pt({3, 3})));

  Rng rng(9, 0);
  for (int trial = 0; trial < 200; ++trial) {
    PointList pts;
    for (int i = 0; i < 6; ++i) pts.push_back(sample_beta_point(3, 0, rng));
    Point x = sample_beta_point(3, 0, rng);
    bool in = contains(pts, x);
    PointList perm(pts.rbegin(), pts.rend());
    CHECK(contains(perm, x) == in);
    Point centroid = Point::Zero(3);
    for (const auto& p : pts) centroid += p / 6;
    perm.push_back(centroid);
    CHECK(contains(perm, x) == in);
  }
}

TEST_CASE("planar and spatial hulls") {
  PointList sq = {pt({0, 0}), pt({1, 0}), pt({1, 1}), pt({0, 1}), pt({0.5, 0.4})};
  auto h = hull_d2(sq);
  CHECK(h.size() == 4);
  CHECK_THROWS_AS(hull_d2({pt({0, 0}), pt({1, 1}), pt({2, 2})}), DegenerateHullError);

  PointList tet = {pt({1, 1, 1}), pt({1, -1, -1}), pt({-1, 1, -1}), pt({-1, -1, 1})};
  auto f = hull_d3(tet);
  CHECK(f.size() == 4);
  for (const auto& face : f) {
    Eigen::Vector3d a = tet[face[0]], b = tet[face[1]], c = tet[face[2]];
    CHECK((b - a).cross(c - a).dot(a) > 0);  // outward
  }
  PointList cube;
  for (int i = 0; i < 8; ++i) cube.push_back(pt({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)}));
  CHECK(hull_d3(cube).size() == 12);
  CHECK_THROWS_AS(hull_d3({pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({1, 1, 0})}), DegenerateHullError);

  Rng rng(5, 0);
  for (int trial = 0; trial < 50; ++trial) {
    PointList pts;
    for (int i = 0; i < 12; ++i) pts.push_back(sample_beta_point(3, -1, rng));
    CHECK(hull_d3(pts).size() == 2 * 12 - 4);
  }
}

TEST_CASE("hyperbolic area by Gauss-Bonnet") {
  PointList ideal;
  for (int k = 0; k < 5; ++k) ideal.push_back(pt({std::cos(2 * pi * k / 5), std::sin(2 * pi * k / 5)}));
  CHECK(hyp_area_polygon_d2(ideal) == Approx(3 * pi).epsilon(1e-14));
  double s = 1e-2;
  PointList tiny = {pt({0, 0}), pt({s, 0}), pt({0, s})};
  CHECK(hyp_area_polygon_d2(tiny) == Approx(s * s / 2).epsilon(0.01));
  PointList far;
  for (int k = 0; k < 3; ++k) far.push_back(0.99 * pt({std::cos(2 * pi * k / 3), std::sin(2 * pi * k / 3)}));
  double a = hyp_area_polygon_d2(far);
  CHECK(a > 0);
  CHECK(a < pi);
  PointList bad = {pt({0, 0}), pt({0.5, 0}), pt({0.1, 0.1}), pt({0, 0.5})};
  CHECK_THROWS_AS(hyp_area_polygon_d2(bad), DomainError);
}

TEST_CASE("ideal tetrahedra") {
  auto a = unit(1, 1, 1), b = unit(1, -1, -1), c = unit(-1, 1, -1), d = unit(-1, -1, 1);
  double reg = 3 * lobachevsky(pi / 3);
  CHECK(reg == Approx(1.0149416064096536).epsilon(1e-14));
  CHECK(ideal_tetra_volume(a, b, c, d) == Approx(reg).epsilon(1e-13));
  CHECK(ideal_tetra_volume(c, a, d, b) == Approx(reg).epsilon(1e-13));
  CHECK(ideal_tetra_volume(d, c, b, a) == Approx(reg).epsilon(1e-13));
  CHECK(std::fabs(ideal_tetra_volume(unit(1, 0, 0), unit(0, 1, 0), unit(-1, 0, 0), unit(0, -1, 0))) <= 1e-9);
  Rng rng(11, 0);
  for (int t = 0; t < 20; ++t) {
    std::array<Eigen::Vector3d, 4> v;
    for (auto& x : v) x = sample_beta_point(3, -1, rng);
    double base = ideal_tetra_volume(v[0], v[1], v[2], v[3]);
    CHECK(ideal_tetra_volume(v[2], v[0], v[3], v[1]) == Approx(base).epsilon(1e-10));
    CHECK(ideal_tetra_volume(v[3], v[2], v[1], v[0]) == Approx(base).epsilon(1e-10));
    CHECK(base <= reg + 1e-12);
  }
  CHECK_THROWS_AS(ideal_tetra_volume(a, a, c, d), DomainError);
}

TEST_CASE("Monte Carlo estimators") {
  SampleConfig cfg{7, 20000, 8};
  auto e4 = mc_ideal_polytope3_volume(4, cfg);
  CHECK(std::fabs(e4.mean - pi / 6) <= 3 * e4.stderr_);
  auto e6 = mc_ideal_polytope3_volume(6, cfg);
  CHECK(std::fabs(e6.mean - 43 * pi / 60) <= 3 * e6.stderr_);

  Rng rng(3, 0);
  PointList four;
  for (int i = 0; i < 4; ++i) four.push_back(sample_beta_point(3, -1, rng));
  CHECK(ideal_polytope3_volume(four) ==
        Approx(ideal_tetra_volume(four[0], four[1], four[2], four[3])).epsilon(1e-13));
  // every sampled ideal hull volume is bounded by C(n,4) regular tetrahedra
  for (int t = 0; t < 20; ++t) {
    PointList pts;
    for (int i = 0; i < 7; ++i) pts.push_back(sample_beta_point(3, -1, rng));
    CHECK(ideal_polytope3_volume(pts) <= 35 * 3 * lobachevsky(pi / 3));
  }

  auto gb = mc_polygon_area({2, std::vector<double>(5, -1.0)}, {1, 1000, 4});
  CHECK(gb.mean == Approx(3 * pi).epsilon(1e-12));
  CHECK(gb.stderr_ <= 1e-9);

  auto ab = mc_absorption({2, {0, 0, 0}}, 0.0, {2, 200000, 8});
  CHECK(std::fabs(ab.mean - 35 / (48 * pi)) <= 3 * ab.stderr_);

  CHECK_THROWS_AS(mc_absorption({2, {0, 0, 0}}, 0.0, {2, 0, 8}), DomainError);
}

TEST_CASE("hyperbolic volume of fixed simplices") {
  SampleConfig cfg{4, 100000, 4};
  double s = 1e-3;
  PointList tiny = {pt({0, 0, 0}), pt({s, 0, 0}), pt({0, s, 0}), pt({0, 0, s})};
  auto t = hyp_volume_simplex_quadrature(tiny, cfg);
  CHECK(t.mean == Approx(simplex_volume(tiny)).epsilon(1e-3));

  PointList tri = {pt({0.9, 0}), pt({-0.3, 0.8}), pt({-0.5, -0.6})};
  auto q = hyp_volume_simplex_quadrature(tri, cfg);
  CHECK(std::fabs(q.mean - hyp_area_polygon_d2(tri)) <= 3 * q.stderr_);

  Point c = (tri[0] + tri[1] + tri[2]) / 3;
  double parts = 0, var = 0;
  for (int i = 0; i < 3; ++i) {
    PointList sub = {tri[i], tri[(i + 1) % 3], c};
    auto e = hyp_volume_simplex_quadrature(sub, {static_cast<std::uint64_t>(10 + i), 100000, 4});
    parts += e.mean;
    var += e.stderr_ * e.stderr_;
  }
  CHECK(std::fabs(parts - q.mean) <= 3 * std::sqrt(var + q.stderr_ * q.stderr_));
  CHECK_THROWS_AS(hyp_volume_simplex_quadrature({pt({1, 0}), pt({0, 0.5}), pt({0, 0})}, cfg), DomainError);
}

TEST_CASE("estimates do not depend on the thread count") {
  SampleConfig cfg{123, 3000, 6};
  setenv("HYPVOL_THREADS", "1", 1);
  auto a = mc_ideal_polytope3_volume(5, cfg);
  auto b = mc_absorption({3, {0, 0.5, -1, 0, 1}}, 0.0, cfg);
  setenv("HYPVOL_THREADS", "4", 1);
  auto a2 = mc_ideal_polytope3_volume(5, cfg);
  auto b2 = mc_absorption({3, {0, 0.5, -1, 0, 1}}, 0.0, cfg);
  unsetenv("HYPVOL_THREADS");
  CHECK(a.mean == a2.mean);
  CHECK(a.stderr_ == a2.stderr_);
  CHECK(b.mean == b2.mean);
}
