#pragma once

#include "gamdist/status.hpp"

namespace gamdist {

/// Arguments of the noncentral gamma CDF pair P_mu(x, y), Q_mu(x, y):
/// shape mu, noncentrality x, abscissa y. Admissible box:
/// 0.5 <= mu <= 1e4, 0 <= x <= 1e4, 0 <= y <= 1e4 (gamma form).
struct NoncentralArgs {
  double mu = 1.0;
  double x = 0.0;
  double y = 0.0;
};

/// Noncentral gamma / chi-square CDF pair. For the chi-square kind the
/// inputs are (degrees of freedom n, noncentrality lambda, abscissa t),
/// mapped onto the gamma form as (n/2, lambda/2, t/2).
CdfResult cdf_noncentral(DistributionKind kind, const NoncentralArgs& args);

/// Ratio I_mu(z) / I_{mu-1}(z) of modified Bessel functions, evaluated by
/// the Gauss/Perron continued fraction (modified Lentz, relative tolerance
/// 1e-15). Requires mu >= 0.5, z > 0; throws std::runtime_error if the
/// fraction fails to converge within 1e4 iterations.
double bessel_ratio(double mu, double z);

/// Inversion of the noncentral CDF with respect to the noncentrality x
/// (target = noncentrality_x, fixed = y, solving Q_mu(x, y) = q) or the
/// quantile y (target = quantile_y, fixed = x, solving P_mu(x, y) = p).
/// Chi-square kind takes and returns chi-square-scaled values.
InversionResult inv_noncentral(DistributionKind kind, InversionTarget target,
                               double mu, double p, double q, double fixed);

}  // namespace gamdist
