#include "hypvol/trig_exact.hpp"

#include "hypvol/errors.hpp"

#include <functional>
#include <map>

namespace hypvol {

TrigPoly TrigPoly::constant(const Rational& c) { return monomial(c, 0, 0, Kind::Cos); }

TrigPoly TrigPoly::monomial(const Rational& c, int p, int k, Kind kind) {
  TrigPoly t;
  t.add(c, p, k, kind);
  return t;
}

void TrigPoly::add(const Rational& c, int p, int k, Kind kind) {
  if (k < 0) {
    k = -k;
    if (kind == Kind::Sin) return add(-c, p, k, kind);
  }
  if (k == 0 && kind == Kind::Sin) return;
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{p, k, kind}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  for (const auto& [key, c] : o.terms_) add(c, std::get<0>(key), std::get<1>(key), std::get<2>(key));
  return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  using K = TrigPoly::Kind;
  TrigPoly r;
  const Rational half(1, 2);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      auto [pa, na, ta] = ka;
      auto [pb, nb, tb] = kb;
      Rational c = ca * cb * half;
      int p = pa + pb;
      if (ta == K::Cos && tb == K::Cos) {
        r.add(c, p, na - nb, K::Cos);
        r.add(c, p, na + nb, K::Cos);
      } else if (ta == K::Sin && tb == K::Sin) {
        r.add(c, p, na - nb, K::Cos);
        r.add(-c, p, na + nb, K::Cos);
      } else if (ta == K::Sin) {
        r.add(c, p, na + nb, K::Sin);
        r.add(c, p, na - nb, K::Sin);
      } else {
        r.add(c, p, nb + na, K::Sin);
        r.add(c, p, nb - na, K::Sin);
      }
    }
  }
  return r;
}

TrigPoly TrigPoly::pow(int e) const {
  TrigPoly r = constant(Rational(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

TrigPoly TrigPoly::antiderivative_from_zero() const {
  TrigPoly r;
  for (const auto& [key, c] : terms_) {
    auto [p, k, kind] = key;
    require(p == 0, "TrigPoly: antiderivative only for p = 0 terms");
    if (k == 0) {
      r.add(c, 1, 0, Kind::Cos);
    } else if (kind == Kind::Cos) {
      r.add(c / Rational(k), 0, k, Kind::Sin);
    } else {
      r.add(c / Rational(k), 0, 0, Kind::Cos);
      r.add(-c / Rational(k), 0, k, Kind::Cos);
    }
  }
  return r;
}

PiPolyValue TrigPoly::integrate_0_pi() const {
  // C_p(k) = ∫_0^π y^p cos(ky), S_p(k) = ∫_0^π y^p sin(ky), by integration by parts
  std::map<std::pair<int, int>, PiPolyValue> cos_memo, sin_memo;
  auto sign = [](int k) { return k % 2 == 0 ? 1 : -1; };
  std::function<PiPolyValue(int, int)> C, S;
  C = [&](int p, int k) -> PiPolyValue {
    if (k == 0) return PiPolyValue(Rational(1, p + 1), p + 1);
    if (p == 0) return PiPolyValue();
    auto key = std::make_pair(p, k);
    if (auto it = cos_memo.find(key); it != cos_memo.end()) return it->second;
    PiPolyValue v = PiPolyValue(Rational(-p, k)) * S(p - 1, k);
    cos_memo.emplace(key, v);
    return v;
  };
  S = [&](int p, int k) -> PiPolyValue {
    if (p == 0) return PiPolyValue(Rational(1 - sign(k), k));
    auto key = std::make_pair(p, k);
    if (auto it = sin_memo.find(key); it != sin_memo.end()) return it->second;
    PiPolyValue v = PiPolyValue(Rational(-sign(k), k), p) + PiPolyValue(Rational(p, k)) * C(p - 1, k);
    sin_memo.emplace(key, v);
    return v;
  };
  PiPolyValue total;
  for (const auto& [key, c] : terms_) {
    auto [p, k, kind] = key;
    total += PiPolyValue(c) * (kind == Kind::Cos ? C(p, k) : S(p, k));
  }
  return total;
}

TrigPoly sin_power(int m) {
  require(m >= 0, "sin_power: m must be non-negative");
  return TrigPoly::monomial(Rational(1), 0, 1, TrigPoly::Kind::Sin).pow(m);
}

PiPolyValue b_exact(int alpha, const std::vector<int>& params) {
  require(alpha >= 0, "b_exact: alpha must be a non-negative integer");
  TrigPoly integrand = sin_power(alpha);
  std::map<int, int> counts;
  for (int m : params) {
    require(m >= 0, "b_exact: parameters must be non-negative integers");
    ++counts[m];
  }
  for (const auto& [m, count] : counts) integrand = integrand * sin_power(m).antiderivative_from_zero().pow(count);
  return integrand.integrate_0_pi();
}

}  // namespace hypvol
