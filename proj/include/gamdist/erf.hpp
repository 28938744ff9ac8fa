#pragma once

#include "gamdist/status.hpp"

namespace gamdist {

/// Error function. Total on finite input; NaN propagates.
double erf(double x);

/// Complementary error function, computed without forming 1 - erf(x)
/// when that would cancel. Underflows to 0 only when exp(-x^2) does.
double erfc(double x);

/// Scaled complement exp(x^2) erfc(x) for x > 0. No underflow for any
/// representable positive x. Throws std::domain_error for x <= 0.
double erfc_scaled(double x);

/// Inverse of erfc: returns x with erfc(x) = y for 0 < y < 2.
/// Throws std::domain_error outside (0, 2).
double inverfc(double y);

/// Standard normal lower/upper tails (P(x), Q(x)).
ProbabilityPair normal_cdf(double x);

/// Inverse of the normal lower tail; equals -sqrt(2) * inverfc(2p).
double normal_quantile(double p);

}  // namespace gamdist
