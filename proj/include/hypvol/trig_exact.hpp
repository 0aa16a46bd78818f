#pragma once

#include "hypvol/pipoly.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace hypvol {

/// Finite sum of c · y^p · cos(k y) and c · y^p · sin(k y) with rational c and k >= 0.
class TrigPoly {
 public:
  enum class Kind { Cos, Sin };
  using Key = std::tuple<int, int, Kind>;  // (p, k, kind)

  TrigPoly() = default;
  static TrigPoly constant(const Rational& c);
  static TrigPoly monomial(const Rational& c, int p, int k, Kind kind);

  void add(const Rational& c, int p, int k, Kind kind);
  const std::map<Key, Rational>& terms() const { return terms_; }

  TrigPoly& operator+=(const TrigPoly& o);
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
  TrigPoly pow(int e) const;

  /// Antiderivative vanishing at y = 0; only defined for terms with p = 0.
  TrigPoly antiderivative_from_zero() const;
  /// Exact ∫_0^π of the expression.
  PiPolyValue integrate_0_pi() const;

 private:
  std::map<Key, Rational> terms_;
};

/// sin^m(y) as a trigonometric polynomial.
TrigPoly sin_power(int m);

/// b(α; λ_1..λ_d) exactly, for integer α >= 0 and integer λ_j >= 0 (y = x + π/2 on [0, π]).
PiPolyValue b_exact(int alpha, const std::vector<int>& params);

}  // namespace hypvol
