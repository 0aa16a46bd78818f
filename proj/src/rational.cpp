#include "hypvol/rational.hpp"

#include "hypvol/errors.hpp"

#include <cmath>

namespace hypvol {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (sgn(den) == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw DomainError("cannot parse rational '" + s + "'");
  }
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero rational");
  q_ /= o.q_;
  return *this;
}

Rational Rational::pow(unsigned e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
  return Rational(n, d);
}

namespace {

// Top 64 bits of |z| as a long double mantissa, with the binary exponent shift in `shift`.
long double top_bits(const mpz_class& z, long& shift) {
  mpz_class a = abs(z);
  long bits = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2));
  shift = bits - 64;
  mpz_class t;
  if (shift > 0) mpz_tdiv_q_2exp(t.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  else mpz_mul_2exp(t.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  mpz_class hi = t >> 32;
  mpz_class lo = t - (hi << 32);
  return static_cast<long double>(mpz_get_ui(hi.get_mpz_t())) * 4294967296.0L +
         static_cast<long double>(mpz_get_ui(lo.get_mpz_t()));
}

}  // namespace

long double Rational::to_long_double() const {
  if (sgn(q_) == 0) return 0.0L;
  long en = 0, ed = 0;
  long double n = top_bits(q_.get_num(), en);
  long double d = top_bits(q_.get_den(), ed);
  long double r = std::ldexp(n / d, static_cast<int>(en - ed));
  return sgn(q_) < 0 ? -r : r;
}

BigInt factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return BigInt(0);
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational beta_int(unsigned m, unsigned n) {
  if (m == 0 || n == 0) throw DomainError("beta_int requires positive arguments");
  return Rational(factorial(m - 1) * factorial(n - 1), factorial(m + n - 1));
}

}  // namespace hypvol
