#pragma once

#include "gamdist/status.hpp"

namespace gamdist {

/// Central gamma / chi-square CDF pair (P, Q). For the chi-square kind the
/// inputs are (degrees of freedom, abscissa) and are mapped to the gamma
/// form (a, x) = (nu/2, t/2) before computing. The smaller tail is computed
/// directly, the other by complementation.
CdfResult cdf_central(DistributionKind kind, double a, double x);

/// Solves P(a, x) = p, Q(a, x) = q for x. Requires p + q = 1 within 1e-10
/// and min(p, q) >= 1e-150. For the chi-square kind, a is the degrees of
/// freedom and the returned value is the chi-square abscissa.
InversionResult inv_central(DistributionKind kind, double a, double p, double q);

}  // namespace gamdist
