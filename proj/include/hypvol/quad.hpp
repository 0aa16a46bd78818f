#pragma once

#include "hypvol/errors.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

namespace hypvol {

struct QuadConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_level = 12;

  void validate() const;
  QuadConfig tighter(double factor) const {
    QuadConfig c = *this;
    c.rel_tol *= factor;
    c.abs_tol *= factor;
    return c;
  }
};

struct ValueWithError {
  double value = 0.0;
  double abs_err_est = 0.0;
  std::string method;
};

template <class T>
struct QuadEstimate {
  T value{};
  double abs_err_est = 0.0;
  double l1 = 0.0;  // integral of |f|, used for relative tolerances
  int level = 0;
};

namespace detail {

// One abscissa of the tanh-sinh rule for t >= 0 mapped to [-1, 1]:
// x = s, 1 - x = cmp (computed without cancellation), weight w.
struct TsNode {
  double s;
  double cmp;
  double w;
};

// Real-line sinh-sinh rule node for t >= 0: x = sinh(pi/2 sinh t), weight w.
struct SsNode {
  double t;
  double x;
  double w;
};

const std::vector<TsNode>& tanh_sinh_level(int level);
const std::vector<SsNode>& sinh_sinh_level(int level);

inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
inline bool finite_value(double v) { return std::isfinite(v); }
inline bool finite_value(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <class T>
[[noreturn]] void fail_quadrature(const char* what, const QuadEstimate<T>& best) {
  double v;
  if constexpr (std::is_same_v<T, double>) {
    v = best.value;
  } else {
    v = best.value.real();
  }
  throw QuadratureError(what, v, best.abs_err_est);
}

template <class T>
bool converged(const QuadEstimate<T>& cur, double diff, const QuadConfig& cfg) {
  return cur.level >= 3 && diff <= std::max(cfg.abs_tol, cfg.rel_tol * cur.l1);
}

template <class T>
double error_floor(const QuadEstimate<T>& cur, double diff, const QuadConfig& cfg) {
  return std::max({diff, cfg.abs_tol, 16 * std::numeric_limits<double>::epsilon() * cur.l1});
}

}  // namespace detail

/// Tanh-sinh rule on [a, b]. f is called either as f(x) or, if it accepts three
/// arguments, as f(x, x - a, b - x) with both endpoint distances computed exactly.
template <class T, class F>
QuadEstimate<T> tanh_sinh(F&& f, double a, double b, const QuadConfig& cfg) {
  cfg.validate();
  require(a < b, "tanh_sinh: need a < b");
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  constexpr bool with_dist = std::is_invocable_v<F&, double, double, double>;

  auto eval = [&](double s, double cmp, bool left, T& out) -> bool {
    double da, db, x;
    if (left) {
      da = h * cmp;
      db = 2 * h - da;
      x = s > 0.5 ? a + da : c - h * s;
    } else {
      db = h * cmp;
      da = 2 * h - db;
      x = s > 0.5 ? b - db : c + h * s;
    }
    if constexpr (with_dist) {
      if (!(da > 0) || !(db > 0)) return false;
      out = f(x, da, db);
    } else {
      if (!(x > a) || !(x < b)) return false;
      out = f(x);
    }
    if (!detail::finite_value(out)) throw QuadratureError("tanh_sinh: integrand not finite", 0.0, 0.0);
    return true;
  };

  T total{};
  double total_abs = 0.0;
  QuadEstimate<T> prev, cur;
  double step = 1.0;
  for (int level = 0; level <= cfg.max_level; ++level) {
    if (level > 0) step *= 0.5;
    for (const auto& nd : detail::tanh_sinh_level(level)) {
      T v;
      bool centre = nd.s == 0.0;
      if (eval(nd.s, nd.cmp, false, v)) {
        total += nd.w * v;
        total_abs += nd.w * detail::magnitude(v);
      }
      if (!centre && eval(nd.s, nd.cmp, true, v)) {
        total += nd.w * v;
        total_abs += nd.w * detail::magnitude(v);
      }
    }
    cur.value = total * (step * h);
    cur.l1 = total_abs * step * h;
    cur.level = level;
    if (level > 0) {
      double diff = detail::magnitude(cur.value - prev.value);
      cur.abs_err_est = detail::error_floor(cur, diff, cfg);
      if (detail::converged(cur, diff, cfg)) return cur;
    } else {
      cur.abs_err_est = detail::magnitude(cur.value);
    }
    prev = cur;
  }
  detail::fail_quadrature("tanh_sinh: no convergence at max_level", cur);
}

/// Sinh-sinh rule on the whole real line for exponentially decaying integrands.
/// The tails are truncated where the level-0 terms become negligible.
template <class T, class F>
QuadEstimate<T> sinh_sinh(F&& f, const QuadConfig& cfg) {
  cfg.validate();
  auto eval = [&](double x) -> T {
    T v = f(x);
    if (!detail::finite_value(v)) throw QuadratureError("sinh_sinh: integrand not finite", 0.0, 0.0);
    return v;
  };

  T total{};
  double total_abs = 0.0;
  double t_cut[2] = {0.0, 0.0};  // [0]: negative side, [1]: positive side
  {
    const auto& lv0 = detail::sinh_sinh_level(0);
    T v0 = eval(0.0);
    total += lv0.front().w * v0;
    total_abs += lv0.front().w * detail::magnitude(v0);
    for (int side = 0; side < 2; ++side) {
      int small_run = 0;
      for (std::size_t i = 1; i < lv0.size(); ++i) {
        const auto& nd = lv0[i];
        T v = eval(side ? nd.x : -nd.x);
        double term = nd.w * detail::magnitude(v);
        total += nd.w * v;
        total_abs += term;
        t_cut[side] = nd.t;
        if (term <= 1e-20 * total_abs) {
          if (++small_run == 2) break;
        } else {
          small_run = 0;
        }
      }
    }
  }
  QuadEstimate<T> prev, cur;
  double step = 1.0;
  for (int level = 0; level <= cfg.max_level; ++level) {
    if (level > 0) {
      step *= 0.5;
      for (const auto& nd : detail::sinh_sinh_level(level)) {
        for (int side = 0; side < 2; ++side) {
          if (nd.t > t_cut[side]) continue;
          T v = eval(side ? nd.x : -nd.x);
          total += nd.w * v;
          total_abs += nd.w * detail::magnitude(v);
        }
      }
    }
    cur.value = total * step;
    cur.l1 = total_abs * step;
    cur.level = level;
    if (level > 0) {
      double diff = detail::magnitude(cur.value - prev.value);
      cur.abs_err_est = detail::error_floor(cur, diff, cfg);
      if (detail::converged(cur, diff, cfg)) return cur;
    } else {
      cur.abs_err_est = detail::magnitude(cur.value);
    }
    prev = cur;
  }
  detail::fail_quadrature("sinh_sinh: no convergence at max_level", cur);
}

ValueWithError integrate_finite(const std::function<double(double)>& f, double a, double b,
                                const QuadConfig& cfg = {});
/// f(x, x - a, b - x); use when the integrand is singular at an endpoint that is not exactly representable.
ValueWithError integrate_finite(const std::function<double(double, double, double)>& f, double a, double b,
                                const QuadConfig& cfg = {});
ValueWithError integrate_real_line(const std::function<double(double)>& f, const QuadConfig& cfg = {});

}  // namespace hypvol
