#include "hypvol/expect.hpp"

#include "hypvol/errors.hpp"
#include "hypvol/parallel.hpp"
#include "hypvol/specfun.hpp"
#include "hypvol/trig_exact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace hypvol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPoleTol = 1e-12;
constexpr double kNearPoleTol = 1e-6;

// ∏ Γ(γ_i+1) / (√π Γ(γ_i+1/2)) = ∏ c_{γ_i - 1/2}
double gamma_product(const BetaSpec& spec) {
  double lg = 0.0;
  for (double b : spec.betas) {
    double g = b + 0.5 * spec.d;
    lg += log_gamma(g + 1) - log_gamma(g + 0.5) - 0.5 * std::log(kPi);
  }
  return std::exp(lg);
}

double double_factorial(int k) {
  double r = 1.0;
  for (int i = k; i > 1; i -= 2) r *= i;
  return r;
}

double factorial_d(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

struct SumWithError {
  double value = 0.0;
  double err = 0.0;
  double magnitude = 0.0;  // Σ |terms|, for rounding bounds
};

// Σ over classes of mult · A(α_I + 2; inside) · (α_I + 1) b(α_I; outside), α_I = shift + S_I,
// where A is a or, with derivative = true, a'.
SumWithError class_sum(const BetaSpec& spec, const std::vector<SubsetClass>& classes, double shift,
                       bool derivative, const QuadConfig& cfg) {
  std::vector<double> vals(classes.size()), errs(classes.size());
  parallel_for(classes.size(), [&](std::size_t i) {
    const SubsetClass& c = classes[i];
    double alpha = shift + c.inside.sum();
    if (spec.d == 2 && c.inside_all_minus_one && std::fabs(shift + 1) <= kPoleTol) alpha = -1.0;
    ValueWithError a = derivative ? a_prime(alpha + 2, c.inside, cfg) : a_fn(alpha + 2, c.inside, cfg);
    ValueWithError b = alpha_plus_one_times_b(alpha, c.outside, cfg);
    double m = c.multiplicity.get_d();
    vals[i] = m * a.value * b.value;
    errs[i] = m * (a.abs_err_est * std::fabs(b.value) + std::fabs(a.value) * b.abs_err_est +
                   a.abs_err_est * b.abs_err_est);
  });
  SumWithError s;
  s.value = pairwise_sum(vals);
  s.err = pairwise_sum(errs);
  for (double v : vals) s.magnitude += std::fabs(v);
  s.err += 8 * kEps * s.magnitude;
  return s;
}

Representation choose(const BetaSpec& spec, Representation rep) {
  if (rep != Representation::Auto) return rep;
  int n = static_cast<int>(spec.n());
  auto up = enumerate_classes(spec, upper_cardinalities(spec.d, n)).size();
  auto lo = enumerate_classes(spec, lower_cardinalities(spec.d, n)).size();
  if (lo != up) return lo < up ? Representation::Lower : Representation::Upper;
  BigInt cu = 0, cl = 0;
  for (int k : upper_cardinalities(spec.d, n)) cu += binomial(n, k);
  for (int k : lower_cardinalities(spec.d, n)) cl += binomial(n, k);
  return cl < cu ? Representation::Lower : Representation::Upper;
}

const char* rep_name(Representation r) { return r == Representation::Lower ? "lower" : "upper"; }

// Regular representation of the expected beta integral for β not a negative integer.
ExpectationResult regular_beta_integral(const BetaSpec& spec, double beta, Representation rep,
                                        const QuadConfig& cfg) {
  int d = spec.d;
  int n = static_cast<int>(spec.n());
  double pref = std::pow(kPi, 0.5 * d - 1) * gamma_fn(beta + 1) * std::exp(-log_gamma(0.5 * d + beta + 1));
  double P = gamma_product(spec);
  double shift = 2 * beta + d;
  ExpectationResult r;
  r.representation = rep_name(rep);
  if (rep == Representation::Upper) {
    auto s = class_sum(spec, enumerate_classes(spec, upper_cardinalities(d, n)), shift, false, cfg);
    r.value = pref * P * s.value;
    r.abs_err_est = std::fabs(pref * P) * s.err + 16 * kEps * std::fabs(r.value);
  } else {
    auto s = class_sum(spec, enumerate_classes(spec, lower_cardinalities(d, n)), shift, false, cfg);
    r.value = pref * (kPi - P * s.value);
    r.abs_err_est = std::fabs(pref * P) * (s.err + 8 * kEps * s.magnitude) + 16 * kEps * std::fabs(pref) * kPi +
                    16 * kEps * std::fabs(r.value);
  }
  r.method = "beta-integral-" + r.representation;
  return r;
}

void require_beta_range(const BetaSpec& spec, double beta) {
  require(beta > -(spec.d + 1) / 2.0, "beta exponent must exceed -(d+1)/2");
}

}  // namespace

// --- specs and classes ----------------------------------------------------------

void BetaSpec::validate() const {
  require(d >= 2, "dimension must be at least 2");
  require(static_cast<int>(betas.size()) >= d + 1, "need at least d+1 points");
  for (double b : betas) require(std::isfinite(b) && b >= -1, "every beta_i must be >= -1");
}

bool BetaSpec::all_equal(double b) const {
  return std::all_of(betas.begin(), betas.end(), [b](double x) { return x == b; });
}

std::vector<int> upper_cardinalities(int d, int n) {
  std::vector<int> ks;
  for (int k = d + 1; k <= n; k += 2) ks.push_back(k);
  return ks;
}

std::vector<int> lower_cardinalities(int d, int n) {
  std::vector<int> ks;
  for (int k = d - 1; k >= 0; k -= 2)
    if (k <= n) ks.push_back(k);
  return ks;
}

std::vector<SubsetClass> enumerate_classes(const BetaSpec& spec, const std::vector<int>& cardinalities) {
  std::map<double, int> counts;
  for (double b : spec.betas) ++counts[b];
  std::vector<std::pair<double, int>> groups(counts.begin(), counts.end());
  int n = static_cast<int>(spec.n());
  std::vector<SubsetClass> out;
  std::vector<int> take(groups.size());
  for (int k : cardinalities) {
    require(k >= 0 && k <= n, "cardinality out of range");
    // enumerate (k_1, ..., k_G) with 0 <= k_g <= count_g and Σ k_g = k
    auto rec = [&](auto&& self, std::size_t g, int left) -> void {
      if (g == groups.size()) {
        if (left != 0) return;
        SubsetClass c;
        c.cardinality = k;
        c.multiplicity = 1;
        c.inside_all_minus_one = true;
        std::vector<double> in, outv;
        for (std::size_t j = 0; j < groups.size(); ++j) {
          double two_gamma = 2 * groups[j].first + spec.d;
          in.insert(in.end(), take[j], two_gamma);
          outv.insert(outv.end(), groups[j].second - take[j], two_gamma);
          c.multiplicity *= binomial(groups[j].second, take[j]);
          if (take[j] > 0 && groups[j].first != -1.0) c.inside_all_minus_one = false;
        }
        c.inside = ParamMultiset(std::move(in));
        c.outside = ParamMultiset(std::move(outv));
        out.push_back(std::move(c));
        return;
      }
      for (int t = 0; t <= std::min(groups[g].second, left); ++t) {
        take[g] = t;
        self(self, g + 1, left - t);
      }
    };
    rec(rec, 0, k);
  }
  return out;
}

// --- expected beta integrals ---------------------------------------------------------

ExpectationResult expected_beta_integral_at_pole(const BetaSpec& spec, int k, const QuadConfig& cfg) {
  spec.validate();
  require(k >= 1 && 2 * k < spec.d + 1, "pole path needs 1 <= k < (d+1)/2");
  int d = spec.d;
  int n = static_cast<int>(spec.n());
  double beta = -k;
  double sign = (k - 1) % 2 == 0 ? 1.0 : -1.0;
  double pref = 2 * std::pow(kPi, 0.5 * d - 1) * std::exp(-log_gamma(beta + 0.5 * d + 1)) * sign / factorial_d(k - 1);
  double P = gamma_product(spec);
  auto s = class_sum(spec, enumerate_classes(spec, upper_cardinalities(d, n)), 2 * beta + d, true, cfg);
  ExpectationResult r;
  r.value = pref * P * s.value;
  r.abs_err_est = std::fabs(pref * P) * s.err + 16 * kEps * std::fabs(r.value);
  r.representation = "upper";
  r.pole_path = true;
  r.method = "beta-integral-pole";
  return r;
}

double expected_beta_integral_at_pole_lower_fd(const BetaSpec& spec, int k, double h, const QuadConfig& cfg) {
  spec.validate();
  require(k >= 1 && 2 * k < spec.d + 1, "pole path needs 1 <= k < (d+1)/2");
  int d = spec.d;
  int n = static_cast<int>(spec.n());
  double beta = -k;
  double sign = (k - 1) % 2 == 0 ? 1.0 : -1.0;
  double pref = 2 * std::pow(kPi, 0.5 * d - 1) * std::exp(-log_gamma(beta + 0.5 * d + 1)) * sign / factorial_d(k - 1);
  double P = gamma_product(spec);
  double total = 0.0;
  for (const auto& c : enumerate_classes(spec, lower_cardinalities(d, n))) {
    double al = 2 * beta + d + c.inside.sum();
    auto g = [&](double x) {
      return a_fn(x + 2, c.inside, cfg).value * alpha_plus_one_times_b(x, c.outside, cfg).value;
    };
    total += c.multiplicity.get_d() * (g(al + h) - g(al - h)) / (2 * h);
  }
  return -pref * P * total;
}

ExpectationResult expected_beta_integral(const BetaSpec& spec, double beta, const QuadConfig& cfg,
                                         const ExpectOptions& opts) {
  spec.validate();
  require_beta_range(spec, beta);
  double k = std::round(beta);
  double dist = std::fabs(beta - k);
  if (k <= -1 && dist <= kPoleTol) return expected_beta_integral_at_pole(spec, static_cast<int>(-k), cfg);
  ExpectationResult r = regular_beta_integral(spec, beta, choose(spec, opts.rep), cfg);
  if (k <= -1 && dist <= kNearPoleTol) {
    auto p = expected_beta_integral_at_pole(spec, static_cast<int>(-k), cfg);
    r.abs_err_est += std::fabs(r.value - p.value) + p.abs_err_est;
    r.near_pole = true;
  }
  return r;
}

// --- hyperbolic volume ---------------------------------------------------------------------

ExpectationResult expected_hyp_volume(const BetaSpec& spec, const QuadConfig& cfg, const ExpectOptions& opts) {
  spec.validate();
  int d = spec.d;
  int n = static_cast<int>(spec.n());
  auto exact_result = [](PiPolyValue v, const char* method) {
    ExpectationResult r;
    r.value = v.to_double();
    r.abs_err_est = 4 * kEps * std::fabs(r.value);
    r.exact = std::move(v);
    r.method = method;
    return r;
  };
  if (opts.use_exact) {
    if (d == 2 && spec.all_equal(-1)) return exact_result(PiPolyValue(Rational(n - 2), 1), "exact:ideal-polygon");
    if (d == 3 && spec.all_equal(-1)) return exact_result(ideal_polytope3(n), "exact:ideal3");
    if (d % 2 == 1 && n == d + 1 && spec.all_equal(-1))
      return exact_result(ideal_simplex_volume_exact(d), "exact:ideal-simplex");
    if (d == 2 && spec.all_equal(0)) return exact_result(polygon_beta0_exact(n), "exact:polygon-beta0");
  }
  double P = gamma_product(spec);
  ExpectationResult r;
  if (d % 2 == 1) {
    double sign = ((d - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    double pref = 2 * std::pow(kPi, 0.5 * (d - 3)) * sign / factorial_d((d - 1) / 2);
    auto s = class_sum(spec, enumerate_classes(spec, upper_cardinalities(d, n)), -1.0, true, cfg);
    r.value = pref * P * s.value;
    r.abs_err_est = std::fabs(pref * P) * s.err + 16 * kEps * std::fabs(r.value);
    r.representation = "upper";
    r.pole_path = true;
    r.method = "hyp-volume-odd";
    return r;
  }
  double pref = std::pow(-2 * kPi, d / 2) / (kPi * double_factorial(d - 1));
  Representation rep = choose(spec, opts.rep);
  r.representation = rep_name(rep);
  if (rep == Representation::Upper) {
    auto s = class_sum(spec, enumerate_classes(spec, upper_cardinalities(d, n)), -1.0, false, cfg);
    r.value = pref * P * s.value;
    r.abs_err_est = std::fabs(pref * P) * s.err + 16 * kEps * std::fabs(r.value);
  } else {
    auto s = class_sum(spec, enumerate_classes(spec, lower_cardinalities(d, n)), -1.0, false, cfg);
    r.value = pref * (kPi - P * s.value);
    r.abs_err_est = std::fabs(pref * P) * s.err + 16 * kEps * (std::fabs(pref) * kPi + std::fabs(r.value));
  }
  r.method = "hyp-volume-even-" + r.representation;
  return r;
}

ExpectationResult expected_hyp_volume_simplex(int d, const std::vector<double>& betas, const QuadConfig& cfg) {
  require(static_cast<int>(betas.size()) == d + 1, "simplex needs exactly d+1 betas");
  BetaSpec spec{d, betas};
  spec.validate();
  double lp = 0.0, sg = 0.0;
  ParamMultiset two_gamma;
  std::vector<double> tg;
  for (double b : betas) {
    double g = b + 0.5 * d;
    lp += log_gamma(g + 1) - log_gamma(g + 0.5);
    sg += g;
    tg.push_back(2 * g);
  }
  two_gamma = ParamMultiset(tg);
  double ratio = std::exp(log_gamma(1 + sg) - log_gamma(0.5 + sg));
  ExpectationResult r;
  ValueWithError a;
  double pref;
  if (d % 2 == 0) {
    pref = 2 * std::pow(-2.0, d / 2) / (kPi * double_factorial(d - 1));
    a = a_fn(1 + 2 * sg, two_gamma, cfg);
    r.method = "simplex-even";
  } else {
    double sign = ((d - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    pref = 4 * sign / (std::pow(kPi, 1.5) * factorial_d((d - 1) / 2));
    a = a_prime(1 + 2 * sg, two_gamma, cfg);
    r.method = "simplex-odd";
    r.pole_path = true;
  }
  double c = pref * std::exp(lp) * ratio;
  r.value = c * a.value;
  r.abs_err_est = std::fabs(c) * a.abs_err_est + 16 * kEps * std::fabs(r.value);
  r.representation = "upper";
  return r;
}

ExpectationResult expected_beta_integral_simplex(int d, const std::vector<double>& betas, double beta,
                                                 const QuadConfig& cfg) {
  require(static_cast<int>(betas.size()) == d + 1, "simplex needs exactly d+1 betas");
  BetaSpec spec{d, betas};
  spec.validate();
  require_beta_range(spec, beta);
  double lp = 0.0, sg = 0.0;
  std::vector<double> tg;
  for (double b : betas) {
    double g = b + 0.5 * d;
    lp += log_gamma(g + 1) - log_gamma(g + 0.5);
    sg += g;
    tg.push_back(2 * g);
  }
  ParamMultiset two_gamma(tg);
  double ratio = std::exp(log_gamma(0.5 * d + beta + sg + 1.5) - log_gamma(0.5 * d + beta + sg + 1));
  double k = std::round(beta);
  ExpectationResult r;
  r.representation = "upper";
  if (k <= -1 && std::fabs(beta - k) <= kPoleTol) {
    int kk = static_cast<int>(-k);
    double sign = (kk - 1) % 2 == 0 ? 1.0 : -1.0;
    double c = 4 / (kPi * std::exp(log_gamma(beta + 0.5 * d + 1))) * sign / factorial_d(kk - 1) * ratio * std::exp(lp);
    auto a = a_prime(2 * beta + d + 2 + 2 * sg, two_gamma, cfg);
    r.value = c * a.value;
    r.abs_err_est = std::fabs(c) * a.abs_err_est + 16 * kEps * std::fabs(r.value);
    r.pole_path = true;
    r.method = "simplex-beta-integral-pole";
    return r;
  }
  double c = 2 * gamma_fn(beta + 1) / (kPi * std::exp(log_gamma(0.5 * d + beta + 1))) * ratio * std::exp(lp);
  auto a = a_fn(2 * beta + d + 2 + 2 * sg, two_gamma, cfg);
  r.value = c * a.value;
  r.abs_err_est = std::fabs(c) * a.abs_err_est + 16 * kEps * std::fabs(r.value);
  r.method = "simplex-beta-integral";
  return r;
}

// --- exact specializations ------------------------------------------------------------------------

PiPolyValue ideal_polytope3(int n) {
  require(n >= 4, "ideal_polytope3: need n >= 4");
  return PiPolyValue(Rational(n, 2) - harmonic(static_cast<unsigned>(n - 1)), 1);
}

PiPolyValue ideal_polytope3_via_sum(int n) {
  require(n >= 4, "ideal_polytope3_via_sum: need n >= 4");
  Rational s(0);
  BigInt den = factorial(static_cast<unsigned>(n - 1));
  for (int k = 4; k <= n; k += 2) {
    // Γ(k/2) Γ(n - k/2) / Γ(n) with integer arguments
    Rational term(binomial(n, k) * factorial(static_cast<unsigned>(k / 2 - 1)) *
                      factorial(static_cast<unsigned>(n - k / 2 - 1)),
                  den);
    s += (k / 2) % 2 == 0 ? term : -term;
  }
  return PiPolyValue(s, 1);
}

Rational alternating_harmonic_sum(int n) {
  require(n >= 2, "alternating_harmonic_sum: need n >= 2");
  Rational s(0);
  for (int l = 2; l <= n / 2; ++l) {
    Rational term(binomial(n, 2 * l) * factorial(static_cast<unsigned>(l - 1)) *
                      factorial(static_cast<unsigned>(n - l - 1)),
                  factorial(static_cast<unsigned>(n - 1)));
    s += l % 2 == 0 ? term : -term;
  }
  return s;
}

PiPolyValue ideal_simplex_volume_exact(int d) {
  require(d >= 3 && d % 2 == 1, "exact ideal simplex volume needs odd d >= 3");
  int h = (d - 1) / 2;
  int m = (d - 3) / 2;
  std::vector<Rational> base(m + 1);
  for (int j = 0; j <= m; ++j) {
    Rational c(binomial(d - 2, m - j));
    base[j] = j % 2 == 0 ? c : -c;
  }
  std::vector<Rational> poly{Rational(1)};
  for (int e = 0; e < d + 1; ++e) {
    std::vector<Rational> next(poly.size() + base.size() - 1, Rational(0));
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = 0; j < base.size(); ++j) next[i + j] += poly[i] * base[j];
    poly = std::move(next);
  }
  Rational integral(0);
  for (std::size_t j = 0; j < poly.size(); ++j) integral += poly[j] / Rational(static_cast<long>(j + h + 1));
  long top = static_cast<long>(d) * d - d - 2;
  Rational pref(BigInt(2), factorial(static_cast<unsigned>(h)) * binomial(top, top / 2));
  return PiPolyValue(pref * integral, h);
}

namespace {

// R(t) = ∫_0^t sinh^m(u) du / sinh^m(t) for even m and t >= 0.
class SinhRatio {
 public:
  explicit SinhRatio(int m) : m_(m) {
    // Taylor coefficients of ∫_0^t sinh^m: a_{s+1} = 2^{-m} Σ_j C(m,j)(-1)^j (m-2j)^s / (s+1)!
    for (int s = 0; s < 90; ++s) {
      BigInt acc = 0;
      for (int j = 0; j <= m; ++j) {
        BigInt p;
        mpz_pow_ui(p.get_mpz_t(), BigInt(m - 2 * j).get_mpz_t(), static_cast<unsigned long>(s));
        BigInt term = binomial(m, j) * p;
        acc += j % 2 == 0 ? term : BigInt(-term);
      }
      BigInt den = factorial(static_cast<unsigned>(s + 1));
      den <<= m;
      coef_.push_back(Rational(acc, den).to_double());
    }
  }

  double operator()(double t) const {
    if (m_ == 0) return t;
    if (t <= 1.0) {
      double s = 0.0;
      for (int i = static_cast<int>(coef_.size()) - 1; i >= 0; --i) s = s * t + coef_[i];
      s *= t;
      return s / std::pow(std::sinh(t), m_);
    }
    double coth = 1.0 / std::tanh(t);
    double csch2 = t > 350 ? 0.0 : 1.0 / (std::sinh(t) * std::sinh(t));
    double r = t;
    for (int k = 2; k <= m_; k += 2) r = coth / k - (k - 1.0) / k * csch2 * r;
    return r;
  }

 private:
  int m_;
  std::vector<double> coef_;
};

}  // namespace

ExpectationResult ideal_simplex_volume(int d, const QuadConfig& cfg) {
  require(d >= 2, "ideal_simplex_volume: need d >= 2");
  ExpectationResult r;
  if (d % 2 == 1) {
    auto v = ideal_simplex_volume_exact(d);
    r.value = v.to_double();
    r.abs_err_est = 4 * kEps * std::fabs(r.value);
    r.exact = v;
    r.method = "exact:ideal-simplex";
    return r;
  }
  SinhRatio ratio(d - 2);
  auto integrand = [&](double t) {
    double at = std::fabs(t);
    if (at == 0.0) return 0.0;
    double inv_sinh = at > 700 ? 0.0 : 1.0 / std::sinh(at);
    return std::pow(ratio(at), d + 1) * inv_sinh;
  };
  auto q = integrate_real_line(integrand, cfg);
  double lp = (1 + 0.5 * d) * std::numbers::ln2 - std::log(kPi * double_factorial(d - 1)) +
              (d + 1) * (log_gamma(0.5 * d) - log_gamma(0.5 * (d - 1))) + log_gamma(0.5 * d * (d - 1)) -
              log_gamma(0.5 * (d * (d - 1) - 1));
  double pref = std::exp(lp);
  r.value = pref * q.value;
  r.abs_err_est = pref * q.abs_err_est + 16 * kEps * std::fabs(r.value);
  r.method = "ideal-simplex-even-quadrature";
  return r;
}

PiPolyValue polygon_beta0_exact(int n) {
  require(n >= 3, "polygon_beta0: need n >= 3");
  PiPolyValue b = b_exact(1, std::vector<int>(n - 1, 2));
  BigInt num = BigInt(n) << (n - 1);
  PiPolyValue scale(Rational(num), -(n - 2));
  return PiPolyValue(Rational(-2), 1) + scale * b;
}

ExpectationResult polygon_beta0(int n, const QuadConfig& cfg) {
  require(n >= 3, "polygon_beta0: need n >= 3");
  auto b = b_fn(1, ParamMultiset::repeated(2, n - 1), cfg);
  double scale = std::ldexp(static_cast<double>(n), n - 1) * std::pow(kPi, -(n - 2));
  ExpectationResult r;
  r.value = -2 * kPi + scale * b.value;
  r.abs_err_est = scale * b.abs_err_est + 16 * kEps * (2 * kPi + std::fabs(scale * b.value));
  r.exact = polygon_beta0_exact(n);
  r.method = "polygon-beta0";
  return r;
}

std::pair<double, double> poly_log_cos_check(int q, const std::vector<Rational>& coeffs, const QuadConfig& cfg) {
  require(q >= 1, "poly_log_cos_check: need q >= 1");
  double lhs = 0.0;
  Rational rhs(0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    int freq = 2 * (q + static_cast<int>(k));
    auto est = integrate_finite(
        [freq](double x, double dl, double dr) { return std::cos(freq * x) * std::log(std::sin(std::min(dl, dr))); },
        -kPi / 2, kPi / 2, cfg);
    lhs += coeffs[k].to_double() * est.value;
    Rational term = coeffs[k] / Rational(static_cast<long>(q + k));
    rhs += k % 2 == 0 ? term : -term;
  }
  double r = rhs.to_double() * kPi / 2;
  if (q % 2 == 0) r = -r;
  return {lhs, r};
}

double richardson_limit(const std::function<double(double)>& g, double eps) {
  return (8 * g(eps / 4) - 6 * g(eps / 2) + g(eps)) / 3;
}

}  // namespace hypvol
