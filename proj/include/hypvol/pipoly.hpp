#pragma once

#include "hypvol/rational.hpp"

#include <map>
#include <string>

namespace hypvol {

/// Exact value of the form sum_k c_k * pi^k with rational c_k and integer k (k may be negative).
class PiPolyValue {
 public:
  PiPolyValue() = default;
  PiPolyValue(const Rational& c, int pi_power = 0) { add_term(c, pi_power); }  // NOLINT

  static PiPolyValue pi_power(int k) { return PiPolyValue(Rational(1), k); }

  /// Parses the canonical rendering produced by str(), e.g. "pi - 128/15*pi^-1".
  static PiPolyValue parse(const std::string& s);

  void add_term(const Rational& c, int pi_power);
  const std::map<int, Rational>& terms() const { return terms_; }
  Rational coefficient(int pi_power) const;
  bool is_zero() const { return terms_.empty(); }

  long double numeric() const;
  double to_double() const { return static_cast<double>(numeric()); }

  /// Canonical rendering: rational coefficients times pi^k, k descending.
  std::string str() const;

  PiPolyValue operator-() const;
  PiPolyValue& operator+=(const PiPolyValue& o);
  PiPolyValue& operator-=(const PiPolyValue& o) { return *this += -o; }
  PiPolyValue& operator*=(const PiPolyValue& o);
  friend PiPolyValue operator+(PiPolyValue a, const PiPolyValue& b) { return a += b; }
  friend PiPolyValue operator-(PiPolyValue a, const PiPolyValue& b) { return a -= b; }
  friend PiPolyValue operator*(PiPolyValue a, const PiPolyValue& b) { return a *= b; }
  friend bool operator==(const PiPolyValue& a, const PiPolyValue& b) { return a.terms_ == b.terms_; }

 private:
  std::map<int, Rational> terms_;  // zero coefficients are never stored
};

}  // namespace hypvol
