#pragma once

#include "hypvol/pipoly.hpp"
#include "hypvol/quad.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace hypvol {

/// Sorted multiset of non-negative parameters (λ_1, ..., λ_d).
class ParamMultiset {
 public:
  ParamMultiset() = default;
  ParamMultiset(std::initializer_list<double> xs) : ParamMultiset(std::vector<double>(xs)) {}
  explicit ParamMultiset(std::vector<double> xs);
  static ParamMultiset repeated(double value, std::size_t count);

  const std::vector<double>& entries() const { return xs_; }
  std::size_t size() const { return xs_.size(); }
  bool empty() const { return xs_.empty(); }
  double sum() const;
  /// Distinct values with their multiplicities, ascending.
  std::vector<std::pair<double, int>> groups() const;
  bool all_equal(double v) const;
  ParamMultiset scaled(double factor) const;
  ParamMultiset merged(const ParamMultiset& o) const;

  friend bool operator==(const ParamMultiset& a, const ParamMultiset& b) { return a.xs_ == b.xs_; }

 private:
  std::vector<double> xs_;
};

ValueWithError a_fn(double alpha, const ParamMultiset& params, const QuadConfig& cfg = {});
ValueWithError b_fn(double alpha, const ParamMultiset& params, const QuadConfig& cfg = {});
/// Quadrature without the closed-form dispatch (oracles and diagnostics).
ValueWithError a_fn_quadrature(double alpha, const ParamMultiset& params, const QuadConfig& cfg = {});
ValueWithError b_fn_quadrature(double alpha, const ParamMultiset& params, const QuadConfig& cfg = {});
/// b through the representation on (-1, 1); a cross-check oracle only.
ValueWithError b_fn_alt(double alpha, const ParamMultiset& params, const QuadConfig& cfg = {});
/// ∂a/∂α from its own log-weighted integral.
ValueWithError a_prime(double alpha, const ParamMultiset& params, const QuadConfig& cfg = {});

/// (α + 1) b(α; params), continuous through α = -1 where it takes the limit value.
ValueWithError alpha_plus_one_times_b(double alpha, const ParamMultiset& params, const QuadConfig& cfg = {});

/// Imaginary residue of the last a-type quadrature on this thread (diagnostics for tests).
double last_a_imag_residue();

double a_ones(int d, double alpha);
double b_ones(int d, double alpha);
double a_prime_ones_at_pole(int k);
PiPolyValue a_prime_odd_repeated(int m, int q);
double limit_alpha_plus_one_times_b(const ParamMultiset& params);

ValueWithError theta_fn(double x, const ParamMultiset& y, const ParamMultiset& z, const QuadConfig& cfg = {});

/// Toggles the shared memo cache for a, a' and b quadratures (enabled by default).
void set_ab_memoization(bool enabled);
void clear_ab_memo();

}  // namespace hypvol
