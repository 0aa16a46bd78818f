#include "hypvol/abcore.hpp"

#include "hypvol/errors.hpp"
#include "hypvol/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <tuple>

namespace hypvol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPoleTol = 1e-12;
constexpr double kNearPoleTol = 1e-6;

thread_local double g_last_imag_residue = 0.0;

ValueWithError closed(double v, double scale = 1.0) {
  return {v, 64 * kEps * std::fabs(v) * std::max(1.0, scale), "closed-form"};
}

QuadConfig inner_config(const QuadConfig& cfg) {
  QuadConfig c = cfg;
  c.rel_tol = std::max(cfg.rel_tol * 0.1, 1e-14);
  c.abs_tol = std::max(cfg.abs_tol * 0.1, 1e-300);
  return c;
}

// --- memo cache ----------------------------------------------------------

using MemoKey = std::tuple<char, double, std::vector<double>, double, double, int>;

struct Memo {
  std::mutex mu;
  std::map<MemoKey, ValueWithError> table;
  std::atomic<bool> enabled{true};
};

Memo& memo() {
  static Memo m;
  return m;
}

template <class Fn>
ValueWithError memoized(char op, double alpha, const ParamMultiset& p, const QuadConfig& cfg, Fn&& compute) {
  Memo& m = memo();
  if (!m.enabled.load(std::memory_order_relaxed)) return compute();
  MemoKey key{op, alpha, p.entries(), cfg.rel_tol, cfg.abs_tol, cfg.max_level};
  {
    std::lock_guard<std::mutex> lock(m.mu);
    auto it = m.table.find(key);
    if (it != m.table.end()) return it->second;
  }
  ValueWithError v = compute();
  std::lock_guard<std::mutex> lock(m.mu);
  m.table.emplace(std::move(key), v);
  return v;
}

// --- integrands ------------------------------------------------------------

// cosh^{-α}(x) ∏ F_{λ_j}(ix), with every factor rescaled so nothing overflows.
std::complex<double> a_integrand(double alpha, const std::vector<std::pair<double, int>>& groups, double total,
                                 double x, const QuadConfig& inner) {
  double lc = log_cosh(x);
  double decay = std::exp(-(alpha - total) * lc);
  if (decay == 0.0) return 0.0;
  std::complex<double> prod = decay;
  for (const auto& [v, count] : groups) {
    std::complex<double> f = f_imag_scaled(v, x, inner);
    std::complex<double> fp = f;
    for (int k = 1; k < count; ++k) fp *= f;
    prod *= fp;
  }
  return prod;
}

ValueWithError a_quadrature(double alpha, const ParamMultiset& params, const QuadConfig& cfg, bool derivative) {
  auto groups = params.groups();
  double total = params.sum();
  QuadConfig inner = inner_config(cfg);
  auto est = sinh_sinh<std::complex<double>>(
      [&](double x) {
        auto v = a_integrand(alpha, groups, total, x, inner);
        return derivative ? -log_cosh(x) * v : v;
      },
      cfg);
  double im = std::fabs(est.value.imag());
  g_last_imag_residue = im;
  double err = est.abs_err_est;
  if (im > std::max(2 * err, 1e3 * kEps * est.l1))
    throw QuadratureError("a: imaginary residue exceeds error estimate", est.value.real(), std::max(err, im));
  return {est.value.real(), err, derivative ? "a'-sinh-sinh" : "a-sinh-sinh"};
}

double prod_f_at_right(const std::vector<std::pair<double, int>>& groups) {
  double p = 1.0;
  for (const auto& [v, count] : groups) p *= std::pow(1.0 / c_one_dim(0.5 * (v - 1.0)), count);
  return p;
}

// P + Q of b_core: the half-weights of b(α;∅) restored after the subtraction
double end_values(const std::vector<std::pair<double, int>>& groups) {
  return prod_f_at_right(groups) + (groups.empty() ? 1.0 : 0.0);
}

// Integral of cos^α (∏F - P sin²(dl/2) - Q cos²(dl/2)) over (-π/2, π/2), where P and Q are the
// values of ∏F at the right and left ends; regular at both ends.
// With subtract = false the plain integrand cos^α ∏F is used.
QuadEstimate<double> b_core(double alpha, const ParamMultiset& params, const QuadConfig& cfg, bool subtract) {
  auto groups = params.groups();
  double pinf = subtract ? prod_f_at_right(groups) : 0.0;
  return tanh_sinh<double>(
      [&](double, double dl, double dr) {
        double c = std::sin(std::min(dl, dr));
        double prod = 1.0;
        for (const auto& [v, count] : groups) prod *= std::pow(f_real_dist(v, dl, dr), count);
        if (subtract) {
          double s = std::sin(0.5 * dl);
          prod -= pinf * s * s;
          if (groups.empty()) prod -= std::cos(0.5 * dl) * std::cos(0.5 * dl);
        }
        return std::pow(c, alpha) * prod;
      },
      -kPi / 2, kPi / 2, cfg);
}

double b_empty(double alpha) {
  return std::sqrt(kPi) * std::exp(log_gamma((alpha + 1) / 2) - log_gamma((alpha + 2) / 2));
}

double b_single(double alpha, double a1) {
  return kPi / 2 *
         std::exp(log_gamma((alpha + 1) / 2) + log_gamma((a1 + 1) / 2) - log_gamma((alpha + 2) / 2) -
                  log_gamma((a1 + 2) / 2));
}

// √π Γ((α+3)/2)/Γ((α+2)/2) = (α+1) b(α;∅) / 2
double half_ap1_b_empty(double alpha) {
  return std::sqrt(kPi) * std::exp(log_gamma((alpha + 3) / 2) - log_gamma((alpha + 2) / 2));
}

}  // namespace

// --- ParamMultiset -----------------------------------------------------------

ParamMultiset::ParamMultiset(std::vector<double> xs) : xs_(std::move(xs)) {
  for (double v : xs_) require(v >= 0 && std::isfinite(v), "ParamMultiset: entries must be finite and >= 0");
  std::sort(xs_.begin(), xs_.end());
}

ParamMultiset ParamMultiset::repeated(double value, std::size_t count) {
  return ParamMultiset(std::vector<double>(count, value));
}

double ParamMultiset::sum() const { return std::accumulate(xs_.begin(), xs_.end(), 0.0); }

std::vector<std::pair<double, int>> ParamMultiset::groups() const {
  std::vector<std::pair<double, int>> g;
  for (double v : xs_) {
    if (!g.empty() && g.back().first == v) {
      ++g.back().second;
    } else {
      g.emplace_back(v, 1);
    }
  }
  return g;
}

bool ParamMultiset::all_equal(double v) const {
  return std::all_of(xs_.begin(), xs_.end(), [v](double x) { return x == v; });
}

ParamMultiset ParamMultiset::scaled(double factor) const {
  std::vector<double> ys = xs_;
  for (double& y : ys) y *= factor;
  return ParamMultiset(std::move(ys));
}

ParamMultiset ParamMultiset::merged(const ParamMultiset& o) const {
  std::vector<double> ys = xs_;
  ys.insert(ys.end(), o.xs_.begin(), o.xs_.end());
  return ParamMultiset(std::move(ys));
}

// --- closed forms ----------------------------------------------------------------

double a_ones(int d, double alpha) {
  require(d >= 0, "a_ones: d must be non-negative");
  require(alpha > d, "a_ones: need alpha > d");
  double r = rgamma((alpha + 1) / 2 - d);
  if (r == 0.0) return 0.0;
  return r * std::exp(std::log(kPi) + log_gamma(alpha - d) - (alpha - d - 1) * std::numbers::ln2 -
                      log_gamma((alpha + 1) / 2));
}

double b_ones(int d, double alpha) {
  require(d >= 0, "b_ones: d must be non-negative");
  require(alpha > -1, "b_ones: need alpha > -1");
  return std::exp((alpha + d) * std::numbers::ln2 + log_gamma((alpha + 1) / 2) + log_gamma((alpha + 1) / 2 + d) -
                  log_gamma(alpha + d + 1));
}

double a_prime_ones_at_pole(int k) {
  require(k >= 2 && k % 2 == 0, "a_prime_ones_at_pole: k must be even and >= 2");
  double sign = (k / 2 - 1) % 2 == 0 ? 1.0 : -1.0;
  return sign * kPi / k;
}

PiPolyValue a_prime_odd_repeated(int m, int q) {
  require(m >= 1 && q >= 1, "a_prime_odd_repeated: m, q must be positive");
  // coefficients of P_m(-t)
  std::vector<Rational> base(m);
  for (int r = 0; r < m; ++r) {
    Rational c(binomial(2 * m - 1, m - 1 - r));
    base[r] = r % 2 == 0 ? c : -c;
  }
  std::vector<Rational> poly{Rational(1)};
  for (int k = 0; k < 2 * q; ++k) {
    std::vector<Rational> next(poly.size() + base.size() - 1, Rational(0));
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = 0; j < base.size(); ++j) next[i + j] += poly[i] * base[j];
    poly = std::move(next);
  }
  Rational integral(0);
  for (std::size_t j = 0; j < poly.size(); ++j) integral += poly[j] / Rational(static_cast<long>(j + q));
  Rational coef = beta_int(m, m).pow(2 * q) * integral / Rational(2);
  if (q % 2 == 0) coef = -coef;
  return PiPolyValue(coef, 1);
}

double limit_alpha_plus_one_times_b(const ParamMultiset& params) {
  if (params.empty()) return 2.0;
  double p = 1.0;
  for (double a : params.entries())
    p *= std::sqrt(kPi) * std::exp(log_gamma((a + 1) / 2) - log_gamma((a + 2) / 2));
  return p;
}

// --- a, a', b ------------------------------------------------------------------

ValueWithError a_fn(double alpha, const ParamMultiset& params, const QuadConfig& cfg) {
  require(alpha > params.sum(), "a: need alpha > sum of parameters");
  if (params.empty()) return closed(std::sqrt(kPi) * std::exp(log_gamma(alpha / 2) - log_gamma((alpha + 1) / 2)), alpha);
  if (params.size() == 1) {
    double a1 = params.entries()[0];
    return closed(kPi / 2 *
                      std::exp(log_gamma(alpha / 2) + log_gamma((a1 + 1) / 2) - log_gamma((alpha + 1) / 2) -
                               log_gamma((a1 + 2) / 2)),
                  alpha);
  }
  if (params.all_equal(1.0)) return closed(a_ones(static_cast<int>(params.size()), alpha), alpha);
  return memoized('a', alpha, params, cfg, [&] { return a_quadrature(alpha, params, cfg, false); });
}

ValueWithError a_fn_quadrature(double alpha, const ParamMultiset& params, const QuadConfig& cfg) {
  require(alpha > params.sum(), "a: need alpha > sum of parameters");
  return a_quadrature(alpha, params, cfg, false);
}

ValueWithError a_prime(double alpha, const ParamMultiset& params, const QuadConfig& cfg) {
  require(alpha > params.sum(), "a': need alpha > sum of parameters");
  return memoized('d', alpha, params, cfg, [&] { return a_quadrature(alpha, params, cfg, true); });
}

double last_a_imag_residue() { return g_last_imag_residue; }

ValueWithError b_fn(double alpha, const ParamMultiset& params, const QuadConfig& cfg) {
  require(alpha > -1, "b: need alpha > -1");
  double inflate = std::fabs(alpha + 1) < kNearPoleTol ? 1.0 / std::fabs(alpha + 1) : 1.0;
  ValueWithError r;
  if (params.empty()) {
    r = closed(b_empty(alpha), alpha);
  } else if (params.size() == 1) {
    r = closed(b_single(alpha, params.entries()[0]), alpha);
  } else if (params.all_equal(1.0)) {
    r = closed(b_ones(static_cast<int>(params.size()), alpha), alpha);
  } else {
    r = memoized('b', alpha, params, cfg, [&] { return b_fn_quadrature(alpha, params, cfg); });
  }
  r.abs_err_est *= inflate;
  return r;
}

ValueWithError b_fn_quadrature(double alpha, const ParamMultiset& params, const QuadConfig& cfg) {
  require(alpha > -1, "b: need alpha > -1");
  bool subtract = alpha < 0;
  auto est = b_core(alpha, params, cfg, subtract);
  double v = est.value, err = est.abs_err_est;
  if (subtract) {
    double tail = 0.5 * end_values(params.groups()) * b_empty(alpha);
    v += tail;
    err += 64 * kEps * std::fabs(tail);
  }
  return {v, err, "b-tanh-sinh"};
}

ValueWithError alpha_plus_one_times_b(double alpha, const ParamMultiset& params, const QuadConfig& cfg) {
  require(alpha >= -1 - kPoleTol, "(alpha+1) b: need alpha >= -1");
  double e = alpha + 1;
  if (std::fabs(e) <= kPoleTol) {
    double v = limit_alpha_plus_one_times_b(params);
    return {v, 64 * kEps * v, "limit"};
  }
  if (params.empty()) return closed(2 * half_ap1_b_empty(alpha), alpha);
  if (params.size() == 1) {
    double a1 = params.entries()[0];
    return closed(kPi * std::exp(log_gamma((alpha + 3) / 2) + log_gamma((a1 + 1) / 2) -
                                 log_gamma((alpha + 2) / 2) - log_gamma((a1 + 2) / 2)),
                  alpha);
  }
  if (params.all_equal(1.0)) {
    int d = static_cast<int>(params.size());
    return closed(std::exp((alpha + d + 1) * std::numbers::ln2 + log_gamma((alpha + 3) / 2) +
                           log_gamma((alpha + 1) / 2 + d) - log_gamma(alpha + d + 1)),
                  alpha);
  }
  if (alpha >= 0) {
    auto b = b_fn(alpha, params, cfg);
    return {e * b.value, e * b.abs_err_est, b.method};
  }
  // (α+1) ∫ cos^α (∏F - P sin²) + P √π Γ((α+3)/2)/Γ((α+2)/2): no cancellation near α = -1
  ValueWithError core = memoized('r', alpha, params, cfg, [&] {
    auto est = b_core(alpha, params, cfg, true);
    return ValueWithError{est.value, est.abs_err_est, "b-tanh-sinh"};
  });
  double tail = end_values(params.groups()) * half_ap1_b_empty(alpha);
  double inflate = std::fabs(e) < kNearPoleTol ? 1.0 / std::fabs(e) : 1.0;
  return {e * core.value + tail, std::fabs(e) * core.abs_err_est * inflate + 64 * kEps * std::fabs(tail),
          "b-tanh-sinh"};
}

ValueWithError b_fn_alt(double alpha, const ParamMultiset& params, const QuadConfig& cfg) {
  require(alpha > -1, "b: need alpha > -1");
  auto groups = params.groups();
  std::vector<double> half_mass;
  for (const auto& g : groups) half_mass.push_back(0.5 / c_one_dim(0.5 * (g.first - 1.0)));
  auto est = tanh_sinh<double>(
      [&](double t, double dl, double dr) {
        double w = dl * dr;  // 1 - t²
        double prod = 1.0;
        for (std::size_t i = 0; i < groups.size(); ++i) {
          double inner = 0.5 * inc_beta(t * t, w, 0.5, 0.5 * (groups[i].first + 1));
          prod *= std::pow(half_mass[i] + (t < 0 ? -inner : inner), groups[i].second);
        }
        return std::pow(w, 0.5 * (alpha - 1)) * prod;
      },
      -1.0, 1.0, cfg);
  return {est.value, est.abs_err_est, "b-alt-tanh-sinh"};
}

// --- Θ -------------------------------------------------------------------------

ValueWithError theta_fn(double x, const ParamMultiset& y, const ParamMultiset& z, const QuadConfig& cfg) {
  require(x >= -0.5, "theta: need x >= -1/2");
  double pref = 1.0 / (2 * kPi);
  for (double w : y.entries()) pref *= c_one_dim(w - 0.5);
  for (double w : z.entries()) pref *= c_one_dim(w - 0.5);
  double s = 2 * x + 2 * y.sum();
  auto a = a_fn(s + 2, y.scaled(2.0), cfg);
  auto b1 = alpha_plus_one_times_b(s, z.scaled(2.0), cfg);
  double v = pref * a.value * b1.value;
  double err = std::fabs(pref) * (a.abs_err_est * std::fabs(b1.value) + std::fabs(a.value) * b1.abs_err_est +
                                  a.abs_err_est * b1.abs_err_est);
  return {v, err, "theta"};
}

void set_ab_memoization(bool enabled) { memo().enabled.store(enabled); }

void clear_ab_memo() {
  std::lock_guard<std::mutex> lock(memo().mu);
  memo().table.clear();
}

}  // namespace hypvol
