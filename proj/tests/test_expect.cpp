#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hypvol/expect.hpp"
#include "hypvol/trig_exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace hypvol;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

namespace {

ExpectOptions quadrature_only(Representation rep = Representation::Auto) {
  ExpectOptions o;
  o.rep = rep;
  o.use_exact = false;
  return o;
}

void check_close(double got, double want, double rel) {
  INFO("got " << got << " want " << want);
  CHECK(std::fabs(got - want) <= rel * std::fabs(want));
}

}  // namespace

TEST_CASE("ideal polytopes in dimension three") {
  const long num[] = {1, 5, 43, 21, 197};
  const long den[] = {6, 12, 60, 20, 140};
  for (int n = 4; n <= 8; ++n) {
    CHECK(ideal_polytope3(n) == PiPolyValue(Rational(num[n - 4], den[n - 4]), 1));
  }
  for (int n = 4; n <= 200; ++n) {
    CHECK(ideal_polytope3_via_sum(n) == ideal_polytope3(n));
    CHECK(PiPolyValue(alternating_harmonic_sum(n), 1) == ideal_polytope3(n));
  }
  CHECK(ideal_polytope3(4).str() == "1/6*pi");
}

TEST_CASE("ideal simplices") {
  CHECK(ideal_simplex_volume_exact(3) == PiPolyValue(Rational(1, 6), 1));
  CHECK(ideal_simplex_volume_exact(5) == PiPolyValue(Rational(943, 942480), 2));
  CHECK(ideal_simplex_volume_exact(7) ==
        PiPolyValue(Rational::parse("6952469612009/2292117595080112800"), 3));
  check_close(ideal_simplex_volume(2).value, pi, 1e-12);
  check_close(ideal_simplex_volume(4).value, 0.07889808278278806, 1e-11);
  check_close(ideal_simplex_volume(6).value, 0.0010400275213773974, 1e-10);
  CHECK(ideal_simplex_volume(5).exact.has_value());
}

TEST_CASE("polygon with uniform vertices") {
  CHECK(polygon_beta0_exact(3).str() == "pi - 128/15*pi^-1");
  CHECK(polygon_beta0_exact(4) == PiPolyValue(Rational(2), 1) + PiPolyValue(Rational(-256, 15), -1));
  CHECK(polygon_beta0_exact(5) == PiPolyValue(Rational(3), 1) + PiPolyValue(Rational(-128, 3), -1) +
                                      PiPolyValue(Rational(5537792, 33075), -3));
  const double want[] = {0.42534829148811284, 0.85069658297622568, 1.2434741962744824, 1.6036811313828829};
  for (int n = 3; n <= 6; ++n) {
    auto r = polygon_beta0(n);
    check_close(r.value, want[n - 3], 1e-11);
    check_close(r.exact->to_double(), want[n - 3], 1e-14);
    CHECK(std::fabs(r.value - r.exact->to_double()) <= r.abs_err_est);
    BetaSpec spec{2, std::vector<double>(n, 0.0)};
    check_close(expected_hyp_volume(spec, {}, quadrature_only()).value, want[n - 3], 1e-10);
    check_close(expected_hyp_volume(spec).value, want[n - 3], 1e-14);
  }
}

TEST_CASE("hyperbolic volume through the general formulas") {
  check_close(expected_hyp_volume({3, std::vector<double>(4, -1.0)}, {}, quadrature_only()).value, pi / 6, 1e-10);
  check_close(expected_hyp_volume({5, std::vector<double>(6, -1.0)}, {}, quadrature_only()).value,
              943 * pi * pi / 942480, 1e-9);
  check_close(expected_hyp_volume({4, std::vector<double>(5, -1.0)}, {}, quadrature_only()).value,
              0.07889808278278806, 1e-9);
  for (int n = 4; n <= 7; ++n) {
    auto r = expected_hyp_volume({3, std::vector<double>(n, -1.0)}, {}, quadrature_only());
    check_close(r.value, ideal_polytope3(n).to_double(), 1e-9);
  }
  for (int n = 3; n <= 6; ++n) {
    auto r = expected_hyp_volume({2, std::vector<double>(n, -1.0)}, {}, quadrature_only());
    if (n >= 5) CHECK(r.representation == "lower");
    check_close(r.value, (n - 2) * pi, 1e-10);
    auto e = expected_hyp_volume({2, std::vector<double>(n, -1.0)});
    REQUIRE(e.exact.has_value());
    CHECK(*e.exact == PiPolyValue(Rational(n - 2), 1));
  }
}

TEST_CASE("euclidean volume of random simplices in the ball") {
  // classical values: triangle in the disk 35/(48π); tetrahedron in the ball 9/715 of the ball volume
  auto r2 = expected_beta_integral({2, {0, 0, 0}}, 0.0);
  check_close(r2.value, 35 / (48 * pi), 1e-11);
  auto r3 = expected_beta_integral({3, {0, 0, 0, 0}}, 0.0);
  check_close(r3.value, 12 * pi / 715, 1e-11);
  check_close(expected_beta_integral_simplex(2, {0, 0, 0}, 0.0).value, 35 / (48 * pi), 1e-11);
  check_close(expected_beta_integral_simplex(3, {0, 0, 0, 0}, 0.0).value, 12 * pi / 715, 1e-11);
}

TEST_CASE("upper and lower representations agree") {
  struct Case {
    int d;
    std::vector<double> betas;
  };
  const std::vector<Case> cases = {
      {2, {0, 0, 0, 0}}, {2, {-1, 0.5, 1, 0, 2}}, {3, {0, 0, 0, 0, 0}}, {4, {0.5, 0, 1, -0.5, 0, 0.25}},
  };
  for (const auto& c : cases) {
    BetaSpec spec{c.d, c.betas};
    for (double beta : {0.0, -0.4, -(c.d + 1) / 2.0 + 0.1}) {
      auto up = expected_beta_integral(spec, beta, {}, quadrature_only(Representation::Upper));
      auto lo = expected_beta_integral(spec, beta, {}, quadrature_only(Representation::Lower));
      INFO("d=" << c.d << " beta=" << beta);
      CHECK(up.representation == "upper");
      CHECK(lo.representation == "lower");
      check_close(up.value, lo.value, 1e-9);
    }
  }
  BetaSpec even{4, {0, 0.5, 1, 0, 0, -1}};
  auto up = expected_hyp_volume(even, {}, quadrature_only(Representation::Upper));
  auto lo = expected_hyp_volume(even, {}, quadrature_only(Representation::Lower));
  check_close(up.value, lo.value, 1e-9);
}

TEST_CASE("pole representations") {
  struct Case {
    int d, k;
  };
  for (Case c : {Case{3, 1}, Case{4, 1}, Case{5, 1}, Case{5, 2}}) {
    std::vector<double> betas = {-1, 0, 0.5, 0, 1, 0.25, 0};
    betas.resize(c.d + 2);
    BetaSpec spec{c.d, betas};
    auto p = expected_beta_integral_at_pole(spec, c.k);
    CHECK(p.pole_path);
    auto direct = expected_beta_integral(spec, -c.k);
    CHECK(direct.pole_path);
    CHECK(direct.value == p.value);
    double eps = 1e-3;
    double sym = 0.5 * (expected_beta_integral(spec, -c.k + eps).value + expected_beta_integral(spec, -c.k - eps).value);
    INFO("d=" << c.d << " k=" << c.k);
    check_close(p.value, sym, 1e-5);
    check_close(p.value, expected_beta_integral_at_pole_lower_fd(spec, c.k, 1e-4), 1e-6);
    auto near = expected_beta_integral(spec, -c.k + 1e-8);
    CHECK(near.near_pole);
    CHECK(std::fabs(near.value - p.value) <= near.abs_err_est + 1e-6 * std::fabs(p.value));
  }
}

TEST_CASE("simplex corollaries agree with the general formulas") {
  for (int d = 2; d <= 5; ++d) {
    std::vector<double> betas;
    for (int i = 0; i <= d; ++i) betas.push_back(-1 + 0.5 * i);
    BetaSpec spec{d, betas};
    INFO("d=" << d);
    check_close(expected_hyp_volume_simplex(d, betas).value,
                expected_hyp_volume(spec, {}, quadrature_only()).value, 1e-9);
    check_close(expected_beta_integral_simplex(d, betas, 0.3).value, expected_beta_integral(spec, 0.3).value, 1e-9);
    if (d >= 3)
      check_close(expected_beta_integral_simplex(d, betas, -1).value, expected_beta_integral(spec, -1).value, 1e-9);
  }
}

TEST_CASE("subset classes") {
  BetaSpec spec{3, {-1, -1, 0, 0, 0}};
  auto cls = enumerate_classes(spec, {2});
  std::vector<long> mult;
  for (const auto& c : cls) mult.push_back(c.multiplicity.get_si());
  std::sort(mult.begin(), mult.end());
  CHECK(mult == std::vector<long>{1, 3, 6});
  CHECK(upper_cardinalities(3, 8) == std::vector<int>{4, 6, 8});
  CHECK(lower_cardinalities(4, 8) == std::vector<int>{3, 1});
  CHECK_THROWS_AS(BetaSpec({2, {0, 0}}).validate(), DomainError);
  CHECK_THROWS_AS(BetaSpec({2, {0, 0, -1.5}}).validate(), DomainError);
  CHECK_THROWS_AS(expected_beta_integral({2, {0, 0, 0}}, -1.5), DomainError);
}

TEST_CASE("log-cos integral identity") {
  auto [l, r] = poly_log_cos_check(1, {Rational(1)});
  CHECK(r == Approx(pi / 2).epsilon(1e-15));
  CHECK(l == Approx(r).epsilon(1e-11));
  for (int q = 1; q <= 4; ++q) {
    auto [lhs, rhs] = poly_log_cos_check(q, {Rational(2), Rational(-1, 3), Rational(5, 7), Rational(1, 2)});
    CHECK(lhs == Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("Richardson extrapolation is exact for quadratics") {
  auto g = [](double e) { return 2.0 + 3 * e - 5 * e * e; };
  CHECK(richardson_limit(g, 0.1) == Approx(2.0).epsilon(1e-14));
}

TEST_CASE("exact b for integer arguments") {
  CHECK(b_exact(0, {}) == PiPolyValue(Rational(1), 1));
  CHECK(b_exact(1, {}) == PiPolyValue(Rational(2)));
  CHECK(b_exact(0, {0}) == PiPolyValue(Rational(1, 2), 2));
  for (int al = 0; al <= 3; ++al) {
    for (const auto& ps : std::vector<std::vector<int>>{{1}, {2, 2}, {0, 3}, {1, 2, 4}, {2, 2, 2, 2}}) {
      std::vector<double> dp(ps.begin(), ps.end());
      double q = b_fn_quadrature(al, ParamMultiset(dp)).value;
      INFO("alpha=" << al << " size=" << ps.size());
      CHECK(b_exact(al, ps).to_double() == Approx(q).epsilon(1e-12));
    }
  }
}
