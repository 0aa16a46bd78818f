#pragma once

#include "hypvol/quad.hpp"
#include "hypvol/rational.hpp"

#include <complex>

namespace hypvol {

double log_gamma(double x);
/// log|Γ(x)| for any real x that is not a pole.
double log_abs_gamma(double x);
/// Sign of Γ(x); 0 at poles.
int gamma_sign(double x);
double gamma_fn(double x);
/// 1/Γ(x); exactly 0 at the poles 0, -1, -2, ...
double rgamma(double x);
double sin_pi(double x);
bool is_nonpositive_integer(double x, double tol = 0.0);

double c_one_dim(double beta);
double c_d_beta(int d, double beta);

/// Non-regularized incomplete beta B_z(p, q).
double inc_beta(double z, double p, double q);
/// Same, with the complement 1 - z supplied separately to keep accuracy near z = 1.
double inc_beta(double z, double zc, double p, double q);
double beta_fn(double p, double q);

double f_real(double beta, double x);
/// F_beta at the point whose distances to -pi/2 and pi/2 are dl and dr (dl + dr = pi).
double f_real_dist(double beta, double dl, double dr);

std::complex<double> f_imag(double beta, double x, const QuadConfig& cfg = {});

/// F_beta(ix) rescaled by cosh^{-beta}(x): returns A sech^beta(x) + i ∫_0^x (cosh y / cosh x)^beta dy
/// with A = 1/(2 c_{(beta-1)/2}). Bounded on the whole real line.
std::complex<double> f_imag_scaled(double beta, double x, const QuadConfig& cfg = {});

/// log cosh(x) without overflow.
double log_cosh(double x);

std::complex<double> p_m_poly(int m, std::complex<double> z);

Rational harmonic(unsigned n);

double lobachevsky(double theta);
/// Partial sum of the sine series with N terms and the bound 1/(2N) on the tail.
double lobachevsky_series(double theta, long n_terms, double* tail_bound = nullptr);

}  // namespace hypvol
