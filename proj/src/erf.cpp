#include "gamdist/erf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "series_tables.hpp"

namespace gamdist {

namespace {

// erf(x) = (2x/sqrt(pi)) exp(-x^2) sum_{n>=0} (2x^2)^n / (1*3*...*(2n+1)),
// all terms positive. Used for |x| <= 0.5.
double erf_small(double x) {
  const double x2 = x * x;
  const double r = 2.0 * x2;
  double term = 1.0;
  double sum = 1.0;
  double odd = 1.0;
  for (int n = 1; n < 40; ++n) {
    odd += 2.0;
    term *= r / odd;
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return detail::kTwoOverSqrtPi * x * std::exp(-x2) * sum;
}

// Scaled complement via the Stieltjes continued fraction
//   sqrt(pi) erfcx(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// evaluated with the modified Lentz scheme in extended precision.
// Valid for x >= 0.5.
double erfcx_cf(double x) {
  const long double xl = x;
  const long double tiny = 1e-300L;
  long double f = xl;
  long double c = f;
  long double d = 0.0L;
  for (int n = 1; n <= 6000; ++n) {
    const long double an = 0.5L * n;
    d = xl + an * d;
    if (d == 0.0L) d = tiny;
    c = xl + an / c;
    if (c == 0.0L) c = tiny;
    d = 1.0L / d;
    const long double delta = c * d;
    f *= delta;
    if (fabsl(delta - 1.0L) < 1e-19L) break;
  }
  return static_cast<double>(1.0L / (detail::kSqrtPiL * f));
}

// Complement for x >= 0.5 with the Gaussian factor evaluated in extended
// precision (x*x is exact in the 64-bit significand).
double erfc_large(double x) {
  const long double xl = x;
  const long double g = expl(-xl * xl);
  if (g == 0.0L) return 0.0;
  return static_cast<double>(static_cast<long double>(erfcx_cf(x)) * g);
}

// Core inverse on 0 < y <= 1.
double inverfc_pos(double y) {
  if (y >= 0.75) {
    // Odd series in t = (sqrt(pi)/2)(1 - y), then one Newton step.
    const double t = detail::kHalfSqrtPi * (1.0 - y);
    const double t2 = t * t;
    double pw = t;
    double x = detail::kInverfSeries[0] * t;
    for (std::size_t k = 1; k < detail::kInverfSeries.size(); ++k) {
      pw *= t2;
      const double term = detail::kInverfSeries[k] * pw;
      x += term;
      if (std::fabs(term) < 1e-17 * std::fabs(x)) break;
    }
    const double r = erfc(x) - y;
    x += r / (detail::kTwoOverSqrtPi * std::exp(-x * x));
    return x;
  }
  // Asymptotic seed, then Newton on h(x) = log(erfc(x)) - log(y).
  // h is decreasing and concave, so the iteration stays positive.
  const double lny = std::log(y);
  double x = std::sqrt(-std::log(y * detail::kSqrtPi * std::sqrt(-lny)));
  for (int it = 0; it < 16; ++it) {
    const long double xl = x;
    const double ecx = erfc_scaled(x);
    const double h =
        static_cast<double>(logl(static_cast<long double>(ecx)) - xl * xl) - lny;
    const double dx = h * ecx * detail::kHalfSqrtPi;
    x += dx;
    if (std::fabs(h) <= 1e-15 || std::fabs(dx) <= 1e-16 * x) break;
  }
  return x;
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::fabs(x);
  if (ax <= 0.5) return erf_small(x);
  const double r = 1.0 - erfc_large(ax);
  return x < 0.0 ? -r : r;
}

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < -0.5) return 2.0 - erfc_large(-x);
  if (x <= 0.5) return 1.0 - erf_small(x);
  return erfc_large(x);
}

double erfc_scaled(double x) {
  if (!(x > 0.0)) throw std::domain_error("erfc_scaled: requires x > 0");
  if (x <= 0.5) {
    const long double xl = x;
    return static_cast<double>(
        expl(xl * xl) * static_cast<long double>(1.0 - erf_small(x)));
  }
  return erfcx_cf(x);
}

double inverfc(double y) {
  if (!(y > 0.0 && y < 2.0)) throw std::domain_error("inverfc: requires 0 < y < 2");
  if (y > 1.0) return -inverfc_pos(2.0 - y);
  return inverfc_pos(y);
}

ProbabilityPair normal_cdf(double x) {
  const double t = x / detail::kSqrt2;
  return ProbabilityPair{0.5 * erfc(-t), 0.5 * erfc(t)};
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: requires 0 < p < 1");
  return 0.0 - detail::kSqrt2 * inverfc(2.0 * p);
}

}  // namespace gamdist
