#include "hypvol/verify.hpp"

#include "hypvol/abcore.hpp"
#include "hypvol/errors.hpp"
#include "hypvol/expect.hpp"
#include "hypvol/mcsim.hpp"
#include "hypvol/specfun.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>

namespace hypvol {

namespace {

constexpr double kPi = std::numbers::pi;

// Tracks the worst deviation relative to its tolerance.
struct Tally {
  double worst_ratio = 0.0;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  std::string where;
  double scale = 1.0;

  void add(double dev, double tol, const std::string& label) {
    dev = std::isnan(dev) ? INFINITY : std::fabs(dev);
    tol *= scale;
    double ratio = tol > 0 ? dev / tol : (dev > 0 ? INFINITY : 0.0);
    if (ratio >= worst_ratio || where.empty()) {
      worst_ratio = ratio;
      discrepancy = dev;
      tolerance = tol;
      where = label;
    }
  }
  void rel(double got, double want, double tol, const std::string& label) {
    add((got - want) / std::max(std::fabs(want), 1e-300), tol, label);
  }
  // relative for values above 1, absolute below
  void near(double got, double want, double tol, const std::string& label) {
    add((got - want) / std::max(std::fabs(want), 1.0), tol, label);
  }
  void exact(bool equal, const std::string& label) { add(equal ? 0.0 : 1.0, 0.5, label); }
};

struct Check {
  const char* id;
  std::function<void(Tally&, const VerifyOptions&)> run;
};

std::string label(const char* k, double v) {
  std::ostringstream os;
  os << k << "=" << v;
  return os.str();
}

const std::vector<Check>& checks() {
  static const std::vector<Check> all = {
      {"ideal3-exact",
       [](Tally& t, const VerifyOptions&) {
         const long num[] = {1, 5, 43, 21, 197};
         const long den[] = {6, 12, 60, 20, 140};
         for (int n = 4; n <= 8; ++n) {
           auto r = expected_hyp_volume({3, std::vector<double>(n, -1.0)});
           t.exact(r.exact && *r.exact == PiPolyValue(Rational(num[n - 4], den[n - 4]), 1), label("n", n));
         }
       }},
      {"ideal3-quadrature",
       [](Tally& t, const VerifyOptions& o) {
         ExpectOptions eo;
         eo.use_exact = false;
         for (int n = 4; n <= (o.quick ? 6 : 8); ++n) {
           auto r = expected_hyp_volume({3, std::vector<double>(n, -1.0)}, {}, eo);
           t.rel(r.value, ideal_polytope3(n).to_double(), 1e-8, label("n", n));
         }
       }},
      {"harmonic-sum",
       [](Tally& t, const VerifyOptions& o) {
         for (int n = 4; n <= (o.quick ? 60 : 200); ++n) {
           t.exact(ideal_polytope3_via_sum(n) == ideal_polytope3(n), label("n", n));
           t.exact(PiPolyValue(alternating_harmonic_sum(n), 1) == ideal_polytope3(n), label("n", n));
         }
       }},
      {"ideal-simplex-odd",
       [](Tally& t, const VerifyOptions&) {
         t.exact(ideal_simplex_volume_exact(3) == PiPolyValue(Rational(1, 6), 1), "d=3");
         t.exact(ideal_simplex_volume_exact(5) == PiPolyValue(Rational(943, 942480), 2), "d=5");
         t.exact(ideal_simplex_volume_exact(7) ==
                     PiPolyValue(Rational::parse("6952469612009/2292117595080112800"), 3),
                 "d=7");
       }},
      {"ideal-simplex-even",
       [](Tally& t, const VerifyOptions& o) {
         t.rel(ideal_simplex_volume(2).value, kPi, 1e-9, "d=2");
         t.rel(ideal_simplex_volume(4).value, 4 * kPi * kPi / 3 - 86528.0 / 6615, 1e-7, "d=4");
         if (!o.quick) t.rel(ideal_simplex_volume(6).value, 0.0010400275213773974, 1e-7, "d=6");
       }},
      {"polygon-beta0",
       [](Tally& t, const VerifyOptions&) {
         for (int n = 3; n <= 6; ++n) {
           auto r = polygon_beta0(n);
           t.add(r.value - r.exact->to_double(), 1e-9, label("n", n));
         }
         t.exact(polygon_beta0_exact(3).str() == "pi - 128/15*pi^-1", "n=3 rendering");
       }},
      {"representations",
       [](Tally& t, const VerifyOptions& o) {
         const std::vector<BetaSpec> specs = {
             {2, {0, 0, 0, 0}}, {2, {-1, 0.5, 1, 0, 2}}, {3, {0, 0, 0, 0, 0}}, {4, {0.5, 0, 1, -0.5, 0, 0.25}}};
         ExpectOptions up, lo;
         up.rep = Representation::Upper;
         lo.rep = Representation::Lower;
         up.use_exact = lo.use_exact = false;
         for (std::size_t i = 0; i < (o.quick ? 2 : specs.size()); ++i) {
           const auto& s = specs[i];
           for (double beta : {0.0, -0.4, -(s.d + 1) / 2.0 + 0.1}) {
             double a = expected_beta_integral(s, beta, {}, up).value;
             double b = expected_beta_integral(s, beta, {}, lo).value;
             t.add(a - b, 1e-9, "d=" + std::to_string(s.d) + " " + label("beta", beta));
           }
         }
       }},
      {"pole-removable",
       [](Tally& t, const VerifyOptions&) {
         struct Case {
           int d, k;
         };
         for (Case c : {Case{3, 1}, Case{4, 1}, Case{5, 1}, Case{5, 2}}) {
           std::vector<double> betas = {-1, 0, 0.5, 0, 1, 0.25, 0};
           betas.resize(c.d + 2);
           BetaSpec s{c.d, betas};
           double p = expected_beta_integral_at_pole(s, c.k).value;
           double r = richardson_limit([&](double e) { return expected_beta_integral(s, -c.k + e).value; }, 1e-2);
           t.add(p - r, 1e-6, "d=" + std::to_string(c.d) + " k=" + std::to_string(c.k));
         }
       }},
      {"absorption-half",
       [](Tally& t, const VerifyOptions&) {
         struct Case {
           int d;
           double beta;
           std::vector<double> betas;
         };
         const std::vector<Case> cases = {
             {2, 0, {0, 0, 0}},           {2, 0.5, {-1, 0, 1, 2}},        {2, -0.5, {0, 0, 0, 0, 0}},
             {3, 0, {-1, -1, -1, -1, -1}}, {3, 1.5, {0, 0.5, 0, 1}},       {3, -0.2, {0, 0, 0, 0, 0, 0}},
             {4, 0, {0, 0, 0, 0, 0}},      {4, 0.3, {-1, 0, 1, 0, -1, 2}}, {5, 0, {0, 0, 0, 0, 0, 0, 0}},
             {2, 2, {-0.5, 0.5, 1.5}},
         };
         for (const auto& c : cases) {
           double half = 0.0;
           int n = static_cast<int>(c.betas.size());
           for (auto ks : {upper_cardinalities(c.d, n), lower_cardinalities(c.d, n)})
             for (const auto& cl : enumerate_classes({c.d, c.betas}, ks))
               half += cl.multiplicity.get_d() *
                       theta_fn(c.beta + 0.5 * c.d, cl.inside.scaled(0.5), cl.outside.scaled(0.5)).value;
           t.add(half - 0.5, 1e-9, "d=" + std::to_string(c.d) + " n=" + std::to_string(n));
         }
       }},
      {"special-functions",
       [](Tally& t, const VerifyOptions&) {
         for (int d = 2; d <= 5; ++d) {
           for (double al : {d + 0.5, d + 2.0}) {
             t.near(a_fn_quadrature(al, ParamMultiset::repeated(1, d)).value, a_ones(d, al), 1e-8,
                   "a d=" + std::to_string(d));
           }
           for (double al : {-0.5, 1.0}) {
             t.near(b_fn_quadrature(al, ParamMultiset::repeated(1, d)).value, b_ones(d, al), 1e-8,
                   "b d=" + std::to_string(d));
           }
         }
         for (int k = 2; k <= 8; k += 2)
           t.add(a_prime(k + 1, ParamMultiset::repeated(1, k)).value - a_prime_ones_at_pole(k), 1e-8,
                 "a' k=" + std::to_string(k));
         for (const auto& ps : std::vector<std::vector<double>>{{}, {0}, {1, 2}, {0.5, 3, 3}}) {
           ParamMultiset p(ps);
           double lim = limit_alpha_plus_one_times_b(p);
           double r = richardson_limit([&](double e) { return e * b_fn_quadrature(-1 + e, p).value; }, 1e-3);
           t.rel(r, lim, 1e-8, "limit size=" + std::to_string(ps.size()));
         }
         for (int m = 1; m <= 4; ++m) {
           for (double u : {-1.0, 0.5, 2.0}) {
             double th = std::atan(std::sinh(u));
             auto rhs = beta_fn(m, m) * std::exp(std::complex<double>(0, th)) * std::pow(std::cos(th), 1 - 2 * m) *
                        p_m_poly(m, std::exp(std::complex<double>(0, 2 * th)));
             t.add(std::abs(f_imag(2 * m - 1, u) - rhs) / std::max(1.0, std::abs(rhs)), 1e-8,
                   "F m=" + std::to_string(m));
           }
         }
         for (int q = 1; q <= 3; ++q) {
           auto [l, r] = poly_log_cos_check(q, {Rational(1), Rational(-2, 3), Rational(1, 5)});
           t.add(l - r, 1e-8, "log-cos q=" + std::to_string(q));
         }
       }},
      {"mc-ideal3",
       [](Tally& t, const VerifyOptions& o) {
         for (int n : {4, 6}) {
           auto e = mc_ideal_polytope3_volume(n, {o.seed, o.quick ? 20000L : 100000L, 8});
           t.add((e.mean - ideal_polytope3(n).to_double()) / e.stderr_, 3.0, label("n", n));
         }
       }},
      {"mc-absorption",
       [](Tally& t, const VerifyOptions& o) {
         const std::vector<BetaSpec> specs = {{2, {0, 0, 0}}, {3, {-1, -1, -1, -1, -1}}, {2, {-1, 0.5, 1, 0}}};
         for (std::size_t i = 0; i < specs.size(); ++i) {
           auto e = mc_absorption(specs[i], 0.0, {o.seed + i, o.quick ? 40000L : 200000L, 8});
           double want = expected_beta_integral(specs[i], 0.0).value;
           t.add((e.mean - want) / e.stderr_, 3.0, "spec " + std::to_string(i));
         }
       }},
      {"gauss-bonnet-ideal",
       [](Tally& t, const VerifyOptions& o) {
         for (int n : {3, 5, 8}) {
           BetaSpec s{2, std::vector<double>(n, -1.0)};
           SampleConfig cfg{o.seed, 500, 4};
           Rng rng(cfg.seed, 0);
           for (int i = 0; i < cfg.n_samples; ++i) {
             PointList pts;
             for (int j = 0; j < n; ++j) pts.push_back(sample_beta_point(2, -1, rng));
             PointList cycle;
             for (int v : hull_d2(pts)) cycle.push_back(pts[v]);
             t.add(hyp_area_polygon_d2(cycle) - (n - 2) * kPi, 1e-9, label("n", n));
           }
         }
       }},
      {"simplex-growth",
       [](Tally& t, const VerifyOptions& o) {
         double prev = INFINITY;
         for (int d = 6; d <= (o.quick ? 8 : 12); ++d) {
           double v = ideal_simplex_volume(d).value;
           double asym = std::exp(1.25) / std::sqrt(kPi) * std::pow(std::sqrt(std::exp(1.0)) / d, d);
           double ratio = v / asym;
           t.add(std::fabs(std::log(ratio)), std::log(2.0), label("d", d));
           t.exact(std::fabs(ratio - 1) < std::fabs(prev - 1), label("monotone d", d));
           prev = ratio;
         }
       }},
  };
  return all;
}

}  // namespace

std::vector<std::string> verification_ids() {
  std::vector<std::string> ids;
  for (const auto& c : checks()) ids.emplace_back(c.id);
  return ids;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  require(opts.tolerance_scale >= 0 && std::isfinite(opts.tolerance_scale), "tolerance scale must be >= 0");
  std::vector<CheckResult> out;
  for (const auto& c : checks()) {
    Tally t;
    t.scale = opts.tolerance_scale;
    CheckResult r;
    r.id = c.id;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(t, opts);
      r.pass = t.worst_ratio <= 1.0;
      r.detail = t.where;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.discrepancy = t.discrepancy;
    r.tolerance = t.tolerance;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hypvol
