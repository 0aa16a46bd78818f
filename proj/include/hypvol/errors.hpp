#pragma once

#include <stdexcept>
#include <string>

namespace hypvol {

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a quadrature fails to reach its tolerance; carries the best estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_estimate, double abs_err_est)
      : std::runtime_error(what), best_estimate_(best_estimate), abs_err_est_(abs_err_est) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double abs_err_est() const noexcept { return abs_err_est_; }

 private:
  double best_estimate_;
  double abs_err_est_;
};

/// Raised by hull construction on collinear / coplanar input.
class DegenerateHullError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw DomainError(msg);
}

}  // namespace hypvol
