#include "hypvol/quad.hpp"

#include <array>
#include <mutex>
#include <numbers>

namespace hypvol {

void QuadConfig::validate() const {
  require(rel_tol > 0 && abs_tol > 0, "QuadConfig: tolerances must be positive");
  require(max_level >= 3 && max_level <= 16, "QuadConfig: max_level must lie in [3, 16]");
}

namespace detail {
namespace {

constexpr int kMaxLevel = 16;
constexpr double kHalfPi = std::numbers::pi / 2;

std::vector<TsNode> build_tanh_sinh(int level) {
  std::vector<TsNode> nodes;
  double step = std::ldexp(1.0, -level);
  for (long k = 0;; ++k) {
    if (level > 0 && k % 2 == 0) continue;
    double t = k * step;
    double u = kHalfPi * std::sinh(t);
    double e = std::exp(-u);
    double cu = std::cosh(u);
    double cmp = e / cu;  // 1 - tanh(u)
    double w = kHalfPi * std::cosh(t) / (cu * cu);
    if (!(w >= 1e-300) || !(cmp > 0)) break;
    nodes.push_back({std::tanh(u), cmp, w});
  }
  return nodes;
}

std::vector<SsNode> build_sinh_sinh(int level) {
  constexpr double t_max = 6.5;  // pi/2 sinh(6.5) ~ 522, so cosh(x) stays finite in log form
  std::vector<SsNode> nodes;
  double step = std::ldexp(1.0, -level);
  for (long k = 0;; ++k) {
    if (level > 0 && k % 2 == 0) continue;
    double t = k * step;
    if (t > t_max) break;
    double u = kHalfPi * std::sinh(t);
    double w = kHalfPi * std::cosh(t) * std::cosh(u);
    nodes.push_back({t, std::sinh(u), w});
  }
  return nodes;
}

template <class Node>
struct LevelCache {
  std::array<std::once_flag, kMaxLevel + 1> once;
  std::array<std::vector<Node>, kMaxLevel + 1> levels;
};

}  // namespace

const std::vector<TsNode>& tanh_sinh_level(int level) {
  static LevelCache<TsNode> cache;
  std::call_once(cache.once[level], [&] { cache.levels[level] = build_tanh_sinh(level); });
  return cache.levels[level];
}

const std::vector<SsNode>& sinh_sinh_level(int level) {
  static LevelCache<SsNode> cache;
  std::call_once(cache.once[level], [&] { cache.levels[level] = build_sinh_sinh(level); });
  return cache.levels[level];
}

}  // namespace detail

ValueWithError integrate_finite(const std::function<double(double)>& f, double a, double b,
                                const QuadConfig& cfg) {
  auto est = tanh_sinh<double>(f, a, b, cfg);
  return {est.value, est.abs_err_est, "tanh-sinh"};
}

ValueWithError integrate_finite(const std::function<double(double, double, double)>& f, double a, double b,
                                const QuadConfig& cfg) {
  auto est = tanh_sinh<double>(f, a, b, cfg);
  return {est.value, est.abs_err_est, "tanh-sinh"};
}

ValueWithError integrate_real_line(const std::function<double(double)>& f, const QuadConfig& cfg) {
  auto est = sinh_sinh<double>(f, cfg);
  return {est.value, est.abs_err_est, "sinh-sinh"};
}

}  // namespace hypvol
