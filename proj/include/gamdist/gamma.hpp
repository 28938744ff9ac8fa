#pragma once

#include "gamdist/status.hpp"

namespace gamdist {

/// Stirling correction S(x) in
///   log Gamma(x) = (x - 1/2) log x - x + log(2 pi)/2 + S(x),
/// together with the number of Bernoulli terms used and the truncation
/// bound (first omitted term, K = 1 on the positive real axis).
struct StirlingCorrection {
  double value = 0.0;
  int terms_used = 0;
  double bound = 0.0;
};

/// Euler gamma function for real non-pole arguments. Returns +inf on
/// overflow (x >~ 171.62); throws std::domain_error at 0, -1, -2, ...
double gammafun(double x);

/// log Gamma(x) for x > 0.
double loggam(double x);

/// Stirling correction for x >= 3, with the Bernoulli series truncated
/// once the bound drops below 1e-17 |S| (at most 12 terms).
StirlingCorrection stirling_S(double x);

/// Regulated gamma function Gamma(x) / (sqrt(2 pi / x) x^x e^{-x}), x > 0.
double gamstar(double x);

/// Gamma(x) / Gamma(y), stable when both arguments are large.
double quotgamm(double x, double y);

/// D(a, x) = x^a e^{-x} / Gamma(a + 1) for a > 0, x >= 0, assembled in
/// log space; underflows to 0 with a status report when out of range.
double dterm(double a, double x);
double dterm(double a, double x, ComputationStatus& status);

namespace detail {

// log Gamma in extended precision (x > 0); backbone of the module.
long double loggam_ld(long double x);

// log Gamma(1 + z) for |z| <= 1, cancellation-free near z = 0.
long double lgam1p_ld(long double z);

// log of |Gamma(x)| for any non-pole x, plus the sign of Gamma(x).
long double loggam_abs_ld(double x, int& sign);

// sin(pi x) with exact argument reduction.
double sinpi(double x);

// phi(lambda) = lambda - log(lambda) - 1  (>= 0, zero at lambda = 1).
long double lambda_phi_ld(long double lambda);

// log D(a, x); -inf when x == 0.
long double dterm_log_ld(double a, double x);

// Bernoulli Stirling series at x >= 8; reports terms used and the bound.
long double stirling_series_ld(long double x, int& terms, long double& bound);

}  // namespace detail

}  // namespace gamdist
