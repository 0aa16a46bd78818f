#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hypvol/quad.hpp"
#include "hypvol/specfun.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace hypvol;
constexpr double pi = std::numbers::pi;

namespace {

using Dist = std::function<double(double, double, double)>;

Dist one(std::function<double(double)> g) {
  return [g](double x, double, double) { return g(x); };
}

struct KnownIntegral {
  const char* name;
  Dist f;
  double a, b;  // a = b = 0 means the whole real line
  double exact;
};

std::vector<KnownIntegral> suite() {
  return {
      {"const", [](double, double, double) { return 1.0; }, -pi / 2, pi / 2, pi},
      {"cos", one([](double x) { return std::cos(x); }), -pi / 2, pi / 2, 2.0},
      {"cos^-0.5", [](double, double da, double db) { return std::pow(std::sin(std::min(da, db)), -0.5); },
       -pi / 2, pi / 2,
       std::tgamma(0.25) * std::sqrt(pi) / std::tgamma(0.75)},
      {"rsqrt", one([](double t) { return 1 / std::sqrt(t); }), 0, 1, 2.0},
      {"t^-0.9", one([](double t) { return std::pow(t, -0.9); }), 0, 1, 10.0},
      {"log", one([](double t) { return std::log(t); }), 0, 1, -1.0},
      {"sqrt(1-t^2)", one([](double t) { return std::sqrt(1 - t * t); }), -1, 1, pi / 2},
      {"exp", one([](double t) { return std::exp(t); }), 0, 1, std::exp(1.0) - 1},
      {"1/(1+t^2)", one([](double t) { return 1 / (1 + t * t); }), 0, 1, pi / 4},
      {"log cos", one([](double x) { return std::log(std::cos(x)); }), 0, pi / 2, -pi / 2 * std::log(2.0)},
      {"t^3", one([](double t) { return t * t * t; }), -2, 3, (81.0 - 16.0) / 4},
      {"sin^2", one([](double x) { return std::sin(x) * std::sin(x); }), 0, pi, pi / 2},
      {"beta(0.3,2.5)", one([](double t) { return std::pow(t, -0.7) * std::pow(1 - t, 1.5); }), 0, 1,
       std::tgamma(0.3) * std::tgamma(2.5) / std::tgamma(2.8)},
      {"t log t", one([](double t) { return t * std::log(t); }), 0, 1, -0.25},
      {"sech", one([](double x) { return 1 / std::cosh(x); }), 0, 0, pi},
      {"sech^3", one([](double x) { return std::pow(std::cosh(x), -3); }), 0, 0, pi / 2},
      {"gauss", one([](double x) { return std::exp(-x * x); }), 0, 0, std::sqrt(pi)},
      {"x^2 gauss", one([](double x) { return x * x * std::exp(-x * x); }), 0, 0, std::sqrt(pi) / 2},
      {"sech^2", one([](double x) { return 1 / (std::cosh(x) * std::cosh(x)); }), 0, 0, 2.0},
      {"sech^0.5", one([](double x) { return std::pow(std::cosh(x), -0.5); }), 0, 0,
       std::sqrt(pi) * std::tgamma(0.25) / std::tgamma(0.75)},
  };
}

ValueWithError run(const KnownIntegral& k, const QuadConfig& cfg) {
  if (k.a == 0 && k.b == 0) return integrate_real_line([&](double x) { return k.f(x, 0, 0); }, cfg);
  return integrate_finite(k.f, k.a, k.b, cfg);
}

}  // namespace

TEST_CASE("spec examples") {
  CHECK(integrate_finite([](double x) { return 1.0 + 0 * x; }, -pi / 2, pi / 2).value == doctest::Approx(pi).epsilon(1e-14));
  CHECK(integrate_finite([](double, double da, double db) { return std::pow(std::sin(std::min(da, db)), -0.5); },
                         -pi / 2, pi / 2)
            .value ==
        doctest::Approx(1 / c_one_dim(-0.75)).epsilon(1e-12));
  CHECK(integrate_finite([](double t) { return std::pow(t, -0.5); }, 0, 1).value == doctest::Approx(2).epsilon(1e-12));
  CHECK(integrate_real_line([](double x) { return 1 / std::cosh(x); }).value == doctest::Approx(pi).epsilon(1e-13));
  CHECK(integrate_real_line([](double x) { return std::pow(std::cosh(x), -3.0); }).value ==
        doctest::Approx(1 / c_one_dim(0.5)).epsilon(1e-12));
  CHECK(std::fabs(integrate_real_line([](double x) { return x * std::exp(-x * x); }).value) < 1e-14);
}

TEST_CASE("error estimate bounds the true error on the closed-form suite") {
  for (double rt : {1e-6, 1e-8, 1e-10, 1e-12}) {
    QuadConfig cfg;
    cfg.rel_tol = rt;
    for (const auto& k : suite()) {
      auto r = run(k, cfg);
      INFO(std::string(k.name) << " rel_tol=" << rt);
      CHECK(std::fabs(r.value - k.exact) <= r.abs_err_est);
    }
  }
}

TEST_CASE("halving rel_tol never increases the true error") {
  for (const auto& k : suite()) {
    double prev_err = INFINITY;
    for (double rt = 1e-4; rt >= 1e-12; rt *= 0.5) {
      QuadConfig cfg;
      cfg.rel_tol = rt;
      double err = std::fabs(run(k, cfg).value - k.exact);
      INFO(std::string(k.name) << " rel_tol=" << rt);
      // a few ulps of slack for roundoff once the rule has saturated
      CHECK(err <= prev_err + 8 * std::numeric_limits<double>::epsilon() * std::fabs(k.exact));
      prev_err = std::min(prev_err, err);
    }
  }
}

TEST_CASE("config validation and failure path") {
  QuadConfig bad;
  bad.max_level = 2;
  CHECK_THROWS_AS(integrate_finite([](double) { return 1.0; }, 0, 1, bad), DomainError);
  bad = {};
  bad.rel_tol = 0;
  CHECK_THROWS_AS(integrate_finite([](double) { return 1.0; }, 0, 1, bad), DomainError);
  QuadConfig shallow;
  shallow.max_level = 3;
  shallow.rel_tol = 1e-15;
  shallow.abs_tol = 1e-300;
  try {
    integrate_finite([](double x) { return std::fabs(x - 0.3); }, 0, 1, shallow);
    FAIL("expected a QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.best_estimate() == doctest::Approx(0.29).epsilon(1e-3));
  }
}

TEST_CASE("exact endpoint distances") {
  // ∫_0^1 (1-t)^-0.9 dt = 10 using the right distance; 1 - t would lose all digits
  auto est = tanh_sinh<double>([](double, double, double db) { return std::pow(db, -0.9); }, 0.0, 1.0, QuadConfig{});
  CHECK(est.value == doctest::Approx(10.0).epsilon(1e-11));
}
