#pragma once

#include "hypvol/abcore.hpp"
#include "hypvol/pipoly.hpp"
#include "hypvol/quad.hpp"
#include "hypvol/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hypvol {

/// Dimension d and the beta parameters of the n random points.
struct BetaSpec {
  int d = 2;
  std::vector<double> betas;

  void validate() const;
  std::size_t n() const { return betas.size(); }
  bool all_equal(double b) const;
};

/// The subsets I of one cardinality that share the multisets {2γ_i : i ∈ I} and {2γ_i : i ∉ I}.
struct SubsetClass {
  ParamMultiset inside;
  ParamMultiset outside;
  BigInt multiplicity;
  int cardinality = 0;
  bool inside_all_minus_one = false;  // every β_i with i ∈ I equals -1
};

enum class Representation { Auto, Upper, Lower };

struct ExpectOptions {
  Representation rep = Representation::Auto;
  bool use_exact = true;  // attach closed-form results where a specialization is known
};

struct ExpectationResult {
  double value = 0.0;
  double abs_err_est = 0.0;
  std::optional<PiPolyValue> exact;
  std::string representation;  // "upper", "lower" or "" when not applicable
  bool pole_path = false;
  bool near_pole = false;
  std::string method;
};

std::vector<int> upper_cardinalities(int d, int n);
std::vector<int> lower_cardinalities(int d, int n);
std::vector<SubsetClass> enumerate_classes(const BetaSpec& spec, const std::vector<int>& cardinalities);

/// E ∫_P (1-|x|²)^β dx for β > -(d+1)/2.
ExpectationResult expected_beta_integral(const BetaSpec& spec, double beta, const QuadConfig& cfg = {},
                                         const ExpectOptions& opts = {});
/// Value at β = -k through the a' representation.
ExpectationResult expected_beta_integral_at_pole(const BetaSpec& spec, int k, const QuadConfig& cfg = {});
/// Second pole representation, with the α-derivative of the full product taken by central differences.
double expected_beta_integral_at_pole_lower_fd(const BetaSpec& spec, int k, double h, const QuadConfig& cfg = {});

ExpectationResult expected_hyp_volume(const BetaSpec& spec, const QuadConfig& cfg = {}, const ExpectOptions& opts = {});
ExpectationResult expected_hyp_volume_simplex(int d, const std::vector<double>& betas, const QuadConfig& cfg = {});
ExpectationResult expected_beta_integral_simplex(int d, const std::vector<double>& betas, double beta,
                                                 const QuadConfig& cfg = {});

PiPolyValue ideal_polytope3(int n);
PiPolyValue ideal_polytope3_via_sum(int n);
Rational alternating_harmonic_sum(int n);

/// Odd d: exact value attached. Even d: numeric.
ExpectationResult ideal_simplex_volume(int d, const QuadConfig& cfg = {});
PiPolyValue ideal_simplex_volume_exact(int d);

ExpectationResult polygon_beta0(int n, const QuadConfig& cfg = {});
PiPolyValue polygon_beta0_exact(int n);

/// Both sides of the log-cos integral identity: (quadrature, exact).
std::pair<double, double> poly_log_cos_check(int q, const std::vector<Rational>& coeffs, const QuadConfig& cfg = {});

/// (8 g(ε/4) - 6 g(ε/2) + g(ε)) / 3: removes the O(ε) and O(ε²) terms.
double richardson_limit(const std::function<double(double)>& g, double eps);

}  // namespace hypvol
