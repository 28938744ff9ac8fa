#include "gamdist/gamma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "series_tables.hpp"

namespace gamdist {
namespace detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// zeta(k) - 1 for k = 2..40; the low orders come from the table, the
// rest are summed directly (fast convergence for k >= 13).
const long double* zeta_minus_one() {
  static const auto table = [] {
    static long double z[41] = {};
    for (int k = 2; k <= 12; ++k) z[k] = kZeta[k - 2] - 1.0L;
    for (int k = 13; k <= 40; ++k) {
      long double s = 0.0L;
      for (int j = 120; j >= 2; --j) s += powl(static_cast<long double>(j), -k);
      z[k] = s;
    }
    return &z[0];
  }();
  return table;
}

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

}  // namespace

long double lgam1p_ld(long double z) {
  // log Gamma(1+z) = -log(1+z) + z (1 - gamma) +
  //   sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k,   |z| <= 1/2;
  // outside that the recursion log Gamma(1+z) = log z + log Gamma(z)
  // brings the argument into range.
  if (z > 0.5L) return logl(z) + lgam1p_ld(z - 1.0L);
  if (z < -0.5L) return lgam1p_ld(z + 1.0L) - logl(fabsl(z + 1.0L));
  const long double* zm1 = zeta_minus_one();
  long double sum = z * (1.0L - kEulerGammaL);
  long double zp = z;
  for (int k = 2; k <= 40; ++k) {
    zp *= z;
    const long double term = (k % 2 == 0 ? zm1[k] : -zm1[k]) * zp / k;
    sum += term;
    if (fabsl(term) < 1e-21L * (fabsl(sum) + 1e-30L)) break;
  }
  return sum - log1pl(z);
}

long double stirling_series_ld(long double x, int& terms, long double& bound) {
  // S(x) = sum_n B_{2n} / ((2n-1)(2n) x^{2n-1}), truncated when the next
  // term (which bounds the remainder on the real axis) is below 1e-17 |S|.
  const long double inv2 = 1.0L / (x * x);
  long double pw = 1.0L / x;
  long double s = 0.0L;
  terms = 0;
  bound = 0.0L;
  for (std::size_t n = 0; n < kStirlingCoef.size(); ++n) {
    const long double term = kStirlingCoef[n] * pw;
    if (n == kStirlingCoef.size() - 1 || (n >= 1 && fabsl(term) < 1e-17L * s)) {
      bound = fabsl(term);
      break;
    }
    s += term;
    ++terms;
    pw *= inv2;
  }
  return s;
}

long double loggam_ld(long double x) {
  if (x >= 12.0L) {
    int n;
    long double b;
    return (x - 0.5L) * logl(x) - x + kHalfLn2PiL + stirling_series_ld(x, n, b);
  }
  // Dedicated series near the zeros at 1 and 2.
  if (fabsl(x - 1.0L) <= 0.004L) return lgam1p_ld(x - 1.0L);
  if (fabsl(x - 2.0L) <= 0.004L) {
    const long double z = x - 2.0L;
    return lgam1p_ld(z) + log1pl(z);
  }
  // Upward recursion into the asymptotic region.
  long double shift = 0.0L;
  long double t = x;
  while (t < 12.0L) {
    shift += logl(t);
    t += 1.0L;
  }
  int n;
  long double b;
  const long double lg = (t - 0.5L) * logl(t) - t + kHalfLn2PiL +
                         stirling_series_ld(t, n, b);
  return lg - shift;
}

long double loggam_abs_ld(double x, int& sign) {
  sign = 1;
  if (x > 0.0) return loggam_ld(x);
  // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
  const double s = sinpi(x);
  if (s < 0.0) sign = -1;
  return logl(kPiL) - logl(fabsl(static_cast<long double>(s))) -
         loggam_ld(1.0L - static_cast<long double>(x));
}

double sinpi(double x) {
  // Fold x into [-0.5, 0.5] with exact arithmetic, then one sin call.
  double y = std::fmod(x, 2.0);
  if (y > 1.0) y -= 2.0;
  else if (y < -1.0) y += 2.0;
  double sign = 1.0;
  if (y > 0.5) y = 1.0 - y;
  else if (y < -0.5) {
    y = 1.0 + y;
    sign = -1.0;  // sin(pi y0) = -sin(pi (1 + y0)) on [-1, -0.5)
  }
  return sign * static_cast<double>(sinl(kPiL * static_cast<long double>(y)));
}

long double lambda_phi_ld(long double lambda) {
  const long double v = lambda - 1.0L;
  if (fabsl(v) <= 0.5L) return v - log1pl(v);
  return lambda - logl(lambda) - 1.0L;
}

long double dterm_log_ld(double a, double x) {
  if (x == 0.0) return -std::numeric_limits<long double>::infinity();
  const long double al = a;
  const long double xl = x;
  if (a > 12.0) {
    // D = exp(-a phi(x/a)) / (sqrt(2 pi a) Gamma*(a))
    int n;
    long double b;
    return -al * lambda_phi_ld(xl / al) - 0.5L * logl(2.0L * kPiL * al) -
           stirling_series_ld(al, n, b);
  }
  return al * logl(xl) - xl - loggam_ld(al + 1.0L);
}

}  // namespace detail

double loggam(double x) {
  if (!(x > 0.0)) throw std::domain_error("loggam: requires x > 0");
  return static_cast<double>(detail::loggam_ld(x));
}

StirlingCorrection stirling_S(double x) {
  if (!(x >= 3.0)) throw std::domain_error("stirling_S: requires x >= 3");
  StirlingCorrection out;
  if (x >= 8.0) {
    int n;
    long double b;
    out.value = static_cast<double>(detail::stirling_series_ld(x, n, b));
    out.terms_used = n;
    out.bound = static_cast<double>(b);
    return out;
  }
  // Backward recursion S(x) = S(x+1) + (x + 1/2) log(1 + 1/x) - 1 from the
  // Bernoulli region, carried in extended precision.
  const int m = static_cast<int>(std::ceil(8.0 - x));
  int n;
  long double b;
  long double s = detail::stirling_series_ld(static_cast<long double>(x) + m, n, b);
  for (int j = m - 1; j >= 0; --j) {
    const long double t = static_cast<long double>(x) + j;
    s += (t + 0.5L) * log1pl(1.0L / t) - 1.0L;
  }
  out.value = static_cast<double>(s);
  out.terms_used = n;
  out.bound = static_cast<double>(b);
  return out;
}

double gammafun(double x) {
  if (std::isnan(x)) return x;
  if (detail::is_nonpositive_integer(x))
    throw std::domain_error("gammafun: pole at non-positive integer");
  if (x > 0.0) {
    // Integer and half-integer arguments are treated separately.
    const double fl = std::floor(x);
    if (x == fl && x <= 22.0) return detail::kFactorial[static_cast<int>(x) - 1];
    if (x - fl == 0.5 && x < 172.0) {
      long double p = detail::kSqrtPiL;
      for (long double t = 0.5L; t < x - 0.25L; t += 1.0L) p *= t;
      return static_cast<double>(p);
    }
    const long double lg = detail::loggam_ld(x);
    if (lg > 709.9L) return detail::kInf;
    return static_cast<double>(expl(lg));
  }
  int sign;
  const long double lg = detail::loggam_abs_ld(x, sign);
  if (lg > 709.9L) return sign > 0 ? detail::kInf : -detail::kInf;
  return sign * static_cast<double>(expl(lg));
}

double gamstar(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamstar: requires x > 0");
  if (x > 3.0) {
    const StirlingCorrection s = stirling_S(x);
    return std::exp(s.value);
  }
  const long double xl = x;
  return static_cast<double>(
      expl(detail::loggam_ld(xl) - (xl - 0.5L) * logl(xl) + xl - detail::kHalfLn2PiL));
}

double quotgamm(double x, double y) {
  if (detail::is_nonpositive_integer(x) || detail::is_nonpositive_integer(y))
    throw std::domain_error("quotgamm: pole at non-positive integer");
  if (x == y) return 1.0;
  const double lo = std::fmin(x, y);
  const double s = std::fabs(y - x);
  if (lo > 0.0 && s <= 6.0 && s == std::floor(s)) {
    // Integer shift: plain recursion Gamma(z+1) = z Gamma(z).
    long double p = 1.0L;
    for (int j = 0; j < static_cast<int>(s); ++j) p *= lo + j;
    return x < y ? static_cast<double>(1.0L / p) : static_cast<double>(p);
  }
  if (lo >= 20.0 && s <= 2.0) {
    // Gamma(x)/Gamma(x+s) ~ w^{-s} sum_n (-1)^n C_n (s)_{2n} / w^{2n},
    // w = min + (s-1)/2, with the first five quotient coefficients.
    const double rho = 0.5 * (1.0 - s);
    const double w = lo + 0.5 * (s - 1.0);
    const double c1 = rho / 12.0;
    const double c2 = rho / 1440.0 + rho * rho / 288.0;
    const double c3 = rho / 90720.0 + rho * rho / 17280.0 + rho * rho * rho / 10368.0;
    const double c4 = rho / 4838400.0 + 101.0 * rho * rho / 87091200.0 +
                      rho * rho * rho / 414720.0 + rho * rho * rho * rho / 497664.0;
    const double iw2 = 1.0 / (w * w);
    double poch = 1.0;  // (s)_{2n}
    double sum = 1.0;
    double pw = 1.0;
    const double c[4] = {c1, c2, c3, c4};
    double sgn = -1.0;
    for (int n = 1; n <= 4; ++n) {
      poch *= (s + 2 * n - 2) * (s + 2 * n - 1);
      pw *= iw2;
      sum += sgn * c[n - 1] * poch * pw;
      sgn = -sgn;
    }
    const double r = std::exp(-s * std::log(w)) * sum;  // Gamma(lo)/Gamma(lo+s)
    return x < y ? r : 1.0 / r;
  }
  int sx, sy;
  const long double d =
      detail::loggam_abs_ld(x, sx) - detail::loggam_abs_ld(y, sy);
  return (sx * sy) * static_cast<double>(expl(d));
}

double dterm(double a, double x, ComputationStatus& status) {
  if (!(a > 0.0) || !(x >= 0.0)) throw std::domain_error("dterm: requires a > 0, x >= 0");
  status = ComputationStatus{};
  if (x == 0.0) return 0.0;
  const long double ld = detail::dterm_log_ld(a, x);
  const double v = static_cast<double>(expl(ld));
  if (v == 0.0) {
    status.code = StatusCode::overflow_underflow;
    status.detail = "dterm underflow";
  }
  return v;
}

double dterm(double a, double x) {
  ComputationStatus st;
  return dterm(a, x, st);
}

}  // namespace gamdist
