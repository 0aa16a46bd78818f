#include "hypvol/specfun.hpp"

#include "hypvol/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace hypvol {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 6.024680040776729583740234375, N = 13.
constexpr double kLanczosG = 6.024680040776729583740234375;
constexpr std::array<double, 13> kLanczosNum = {
    23531376880.410759688572007674451636754734846804940,
    42919803642.649098768957899047001988850926355848959,
    35711959237.355668049440185451547166705960488635843,
    17921034426.037209699919755754458931112671403265390,
    6039542586.3520280050642916443072979210699388420708,
    1439720407.3117216736632230727949123939715485786772,
    248874557.86205415651146038641322942321632125127801,
    31426415.585400194380614231628318205362874684987640,
    2876370.6289353724412254090516208496135991145378768,
    186056.26539522349504029498971604569928220784236328,
    8071.6720023658162106380029022722506138218516325024,
    210.82427775157934587250973392071336271166969580291,
    2.5066282746310002701649081771338373386264310793408};
constexpr std::array<double, 13> kLanczosDen = {
    0.0, 39916800.0, 120543840.0, 150917976.0, 105258076.0, 45995730.0, 13339535.0,
    2637558.0, 357423.0, 32670.0, 1925.0, 66.0, 1.0};

// zeta(2) .. zeta(25)
constexpr std::array<double, 24> kZeta = {
    1.6449340668482264365, 1.2020569031595942854, 1.0823232337111381915,
    1.0369277551433699263, 1.0173430619844491397, 1.0083492773819228268,
    1.0040773561979443394, 1.0020083928260822144, 1.0009945751278180853,
    1.0004941886041194646, 1.0002460865533080483, 1.0001227133475784891,
    1.0000612481350587048, 1.0000305882363070205, 1.0000152822594086519,
    1.0000076371976378998, 1.0000038172932649998, 1.0000019082127165539,
    1.0000009539620338728, 1.0000004769329867878, 1.0000002384505027277,
    1.0000001192199259653, 1.0000000596081890513, 1.0000000298035035147};

double zeta_int(int k) {
  if (k - 2 < static_cast<int>(kZeta.size())) return kZeta[k - 2];
  double s = 1.0;
  for (int n = 2; n <= 6; ++n) s += std::pow(n, -k);
  return s;
}

double lanczos_sum(double x) {
  double num = 0.0, den = 0.0;
  if (x < 5.0) {
    for (int i = 12; i >= 0; --i) {
      num = num * x + kLanczosNum[i];
      den = den * x + kLanczosDen[i];
    }
  } else {
    for (int i = 0; i < 13; ++i) {
      num = num / x + kLanczosNum[i];
      den = den / x + kLanczosDen[i];
    }
  }
  return num / den;
}

// log Γ(1 + e) for |e| <= 0.25 by its Taylor series.
double log_gamma_1p(double e) {
  constexpr double euler = 0.57721566490153286061;
  double s = -euler * e;
  double p = -e;
  for (int k = 2; k < 60; ++k) {
    p *= -e;
    double term = zeta_int(k) * p / k;
    s += term;
    if (std::fabs(term) < 1e-18 * std::fabs(s)) break;
  }
  return s;
}

double cf_beta(double z, double p, double q) {
  // modified Lentz evaluation of the continued fraction for I_z(p, q)
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  double qab = p + q, qap = p + 1.0, qam = p - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * z / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 100000; ++m) {
    int m2 = 2 * m;
    double aa = m * (q - m) * z / ((qam + m2) * (p + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(p + m) * (qab + m) * z / ((p + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  throw QuadratureError("inc_beta: continued fraction did not converge", h, std::fabs(h));
}

// B_z(p, q) via the continued fraction without the symmetry swap.
double inc_beta_direct(double z, double zc, double p, double q) {
  if (z <= 0.0) return 0.0;
  double front = std::exp(p * std::log(z) + q * std::log(zc)) / p;
  return front * cf_beta(z, p, q);
}

}  // namespace

double log_gamma(double x) {
  require(x > 0, "log_gamma: argument must be positive");
  if (x == 1.0 || x == 2.0) return 0.0;
  if (std::fabs(x - 1.0) <= 0.25) return log_gamma_1p(x - 1.0);
  if (std::fabs(x - 2.0) <= 0.25) return log_gamma_1p(x - 2.0) + std::log1p(x - 2.0);
  if (x < 1e-20) return -std::log(x);
  double r = std::log(lanczos_sum(x)) - kLanczosG;
  r += (x - 0.5) * (std::log(x + kLanczosG - 0.5) - 1.0);
  return r;
}

double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  // reduce to [-1/4, 1/4] segments so that sin is evaluated on small arguments
  if (r <= 0.25) return std::sin(kPi * r);
  if (r <= 0.75) return std::cos(kPi * (r - 0.5));
  if (r <= 1.25) return -std::sin(kPi * (r - 1.0));
  if (r <= 1.75) return -std::cos(kPi * (r - 1.5));
  return std::sin(kPi * (r - 2.0));
}

bool is_nonpositive_integer(double x, double tol) {
  if (x > tol) return false;
  return std::fabs(x - std::round(x)) <= tol;
}

double log_abs_gamma(double x) {
  if (x > 0) return log_gamma(x);
  require(!is_nonpositive_integer(x), "log_abs_gamma: pole of the gamma function");
  // reflection: Γ(x)Γ(1-x) = π / sin(πx)
  return std::log(kPi / std::fabs(sin_pi(x))) - log_gamma(1.0 - x);
}

int gamma_sign(double x) {
  if (x > 0) return 1;
  if (is_nonpositive_integer(x)) return 0;
  return static_cast<long>(std::floor(x)) % 2 == 0 ? 1 : -1;
}

double gamma_fn(double x) {
  require(!is_nonpositive_integer(x), "gamma_fn: pole of the gamma function");
  if (x > 0 && x < 20 && x == std::floor(x)) {
    double f = 1.0;
    for (int k = 2; k < x; ++k) f *= k;
    return f;
  }
  return gamma_sign(x) * std::exp(log_abs_gamma(x));
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / gamma_fn(x);
}

double c_one_dim(double beta) {
  require(beta > -1, "c_one_dim: beta must exceed -1");
  return std::exp(log_gamma(beta + 1.5) - log_gamma(beta + 1.0)) / std::sqrt(kPi);
}

double c_d_beta(int d, double beta) {
  require(d >= 1, "c_d_beta: dimension must be at least 1");
  require(beta > -1, "c_d_beta: beta must exceed -1");
  return std::exp(log_gamma(0.5 * d + beta + 1.0) - log_gamma(beta + 1.0) - 0.5 * d * std::log(kPi));
}

double beta_fn(double p, double q) {
  return std::exp(log_gamma(p) + log_gamma(q) - log_gamma(p + q));
}

double inc_beta(double z, double zc, double p, double q) {
  require(p > 0 && q > 0, "inc_beta: parameters must be positive");
  require(z >= 0 && z <= 1 && zc >= 0 && zc <= 1, "inc_beta: z must lie in [0, 1]");
  if (z == 0.0) return 0.0;
  if (zc == 0.0) return beta_fn(p, q);
  if (z > p / (p + q)) return beta_fn(p, q) - inc_beta_direct(zc, z, q, p);
  return inc_beta_direct(z, zc, p, q);
}

double inc_beta(double z, double p, double q) {
  require(z >= 0 && z <= 1, "inc_beta: z must lie in [0, 1]");
  return inc_beta(z, 1.0 - z, p, q);
}

double f_real_dist(double beta, double dl, double dr) {
  require(beta > -1, "f_real: beta must exceed -1");
  if (beta == 0.0) return dl <= dr ? dl : kPi - dr;
  if (beta == 1.0) {
    double sl = std::sin(0.5 * dl), sr = std::sin(0.5 * dr);
    return dl <= dr ? 2 * sl * sl : 2.0 - 2 * sr * sr;
  }
  double h = 0.5 * (beta + 1.0);
  double sl = std::sin(0.5 * std::min(dl, kPi)), sr = std::sin(0.5 * std::min(dr, kPi));
  double u = sl * sl, uc = sr * sr;  // u = sin^2(dl/2), 1 - u = sin^2(dr/2)
  double scale = std::exp2(beta);
  if (u <= uc) return scale * inc_beta_direct(u, uc, h, h);
  return scale * (beta_fn(h, h) - inc_beta_direct(uc, u, h, h));
}

double f_real(double beta, double x) {
  require(x >= -kPi / 2 && x <= kPi / 2, "f_real: x must lie in [-pi/2, pi/2]");
  return f_real_dist(beta, x + kPi / 2, kPi / 2 - x);
}

double log_cosh(double x) {
  double ax = std::fabs(x);
  return ax + std::log1p(std::exp(-2 * ax)) - std::numbers::ln2;
}

std::complex<double> f_imag_scaled(double beta, double x, const QuadConfig& cfg) {
  require(beta >= 0, "f_imag: beta must be non-negative");
  double amp = 0.5 / c_one_dim(0.5 * (beta - 1.0)) * std::exp(-beta * log_cosh(x));
  double ax = std::fabs(x);
  double g;
  if (beta == std::floor(beta) && beta < 200) {
    // G_n = tanh/n + (n-1)/n sech^2 G_{n-2}, G_0 = x, G_1 = tanh x
    int n = static_cast<int>(beta);
    double th = std::tanh(ax);
    double sech2 = ax > 350 ? 0.0 : 1.0 / (std::cosh(ax) * std::cosh(ax));
    g = n % 2 == 0 ? ax : th;
    for (int k = n % 2 == 0 ? 2 : 3; k <= n; k += 2) g = th / k + (k - 1.0) / k * sech2 * g;
  } else if (ax == 0.0) {
    g = 0.0;
  } else {
    double lx = log_cosh(ax);
    auto est = tanh_sinh<double>(
        [&](double, double, double db) {
          // y = ax - db
          return std::exp(beta * (log_cosh(ax - db) - lx));
        },
        0.0, ax, cfg);
    g = est.value;
  }
  return {amp, x < 0 ? -g : g};
}

std::complex<double> f_imag(double beta, double x, const QuadConfig& cfg) {
  require(beta >= 0, "f_imag: beta must be non-negative");
  double a = 0.5 / c_one_dim(0.5 * (beta - 1.0));
  if (x == 0.0) return {a, 0.0};
  auto est = tanh_sinh<double>([&](double y) { return std::exp(beta * log_cosh(y)); }, 0.0, std::fabs(x), cfg);
  return {a, x < 0 ? -est.value : est.value};
}

std::complex<double> p_m_poly(int m, std::complex<double> z) {
  require(m >= 1, "p_m_poly: m must be at least 1");
  std::complex<double> s = 0.0;
  for (int r = m - 1; r >= 0; --r) s = s * z + binomial(2 * m - 1, m - 1 - r).get_d();
  return s;
}

Rational harmonic(unsigned n) {
  Rational h(0);
  for (unsigned j = 1; j <= n; ++j) h += Rational(1, static_cast<long>(j));
  return h;
}

double lobachevsky(double theta) {
  // Л(θ) = Cl2(2θ)/2 with Cl2(φ) = φ - φ log|φ| + Σ ζ(2k) φ^{2k+1} / (k (2k+1) (2π)^{2k}), |φ| <= π
  double t = std::fmod(theta, kPi);
  if (t > kPi / 2) t -= kPi;
  if (t < -kPi / 2) t += kPi;
  double phi = 2 * t;
  if (phi == 0.0) return 0.0;
  double s = phi - phi * std::log(std::fabs(phi));
  double r = phi / (2 * kPi);
  double r2 = r * r;
  double pw = phi;
  for (int k = 1; k < 80; ++k) {
    pw *= r2;
    double term = zeta_int(2 * k) * pw / (k * (2.0 * k + 1));
    s += term;
    if (std::fabs(term) < 1e-18) break;
  }
  return 0.5 * s;
}

double lobachevsky_series(double theta, long n_terms, double* tail_bound) {
  double s = 0.0;
  for (long n = n_terms; n >= 1; --n) s += std::sin(2.0 * n * theta) / (2.0 * n * n);
  if (tail_bound) *tail_bound = 1.0 / (2.0 * n_terms);
  return s;
}

}  // namespace hypvol
