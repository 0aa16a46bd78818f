#include "hypvol/pipoly.hpp"

#include "hypvol/errors.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace hypvol {

void PiPolyValue::add_term(const Rational& c, int pi_power) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(pi_power, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational PiPolyValue::coefficient(int pi_power) const {
  auto it = terms_.find(pi_power);
  return it == terms_.end() ? Rational(0) : it->second;
}

long double PiPolyValue::numeric() const {
  constexpr long double pi = std::numbers::pi_v<long double>;
  long double sum = 0.0L;
  for (const auto& [k, c] : terms_) sum += c.to_long_double() * std::pow(pi, static_cast<long double>(k));
  return sum;
}

std::string PiPolyValue::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    bool negative = c.sign() < 0;
    Rational mag = negative ? -c : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string pi_part = k == 0 ? "" : (k == 1 ? "pi" : "pi^" + std::to_string(k));
    if (k == 0) {
      out += mag.str();
    } else if (mag == Rational(1)) {
      out += pi_part;
    } else {
      out += mag.str() + "*" + pi_part;
    }
  }
  return out;
}

PiPolyValue PiPolyValue::parse(const std::string& s) {
  PiPolyValue result;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) {
    throw DomainError("cannot parse pi-polynomial '" + s + "': " + why);
  };
  skip_ws();
  if (s.compare(pos, std::string::npos, "0") == 0) return result;
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    skip_ws();
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Rational coef(1);
    int power = 0;
    if (s.compare(pos, 2, "pi") != 0) {
      std::size_t start = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
      if (start == pos) fail("expected coefficient");
      coef = Rational::parse(s.substr(start, pos - start));
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
      } else {
        result.add_term(sign < 0 ? -coef : coef, 0);
        continue;
      }
    }
    if (s.compare(pos, 2, "pi") != 0) fail("expected pi");
    pos += 2;
    power = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      std::size_t start = pos;
      if (pos < s.size() && s[pos] == '-') ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail("expected exponent");
      power = std::stoi(s.substr(start, pos - start));
    }
    result.add_term(sign < 0 ? -coef : coef, power);
    skip_ws();
  }
  return result;
}

PiPolyValue PiPolyValue::operator-() const {
  PiPolyValue r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

PiPolyValue& PiPolyValue::operator+=(const PiPolyValue& o) {
  for (const auto& [k, c] : o.terms_) add_term(c, k);
  return *this;
}

PiPolyValue& PiPolyValue::operator*=(const PiPolyValue& o) {
  PiPolyValue r;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) r.add_term(ca * cb, ka + kb);
  *this = std::move(r);
  return *this;
}

}  // namespace hypvol
