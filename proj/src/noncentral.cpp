#include "gamdist/noncentral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gamdist/central.hpp"
#include "gamdist/erf.hpp"
#include "gamdist/gamma.hpp"
#include "series_tables.hpp"

namespace gamdist {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Rough log-scale estimates used only to locate the summation window.
// ---------------------------------------------------------------------------

double log_D_est(double a, double y) {
  if (y <= 0.0) return -std::numeric_limits<double>::infinity();
  return a * std::log(y) - y - std::lgamma(a + 1.0);
}

double log_P_est(double a, double y) {
  if (y >= a) return 0.0;
  return std::fmin(0.0, log_D_est(a, y) + std::log((a + 1.0) / (a + 1.0 - y)));
}

double log_Q_est(double a, double y) {
  if (y <= a) return 0.0;
  return std::fmin(0.0, log_D_est(a, y) + std::log(a) - std::log(y - a + 1.0));
}

struct Window {
  long start = 0;    // iteration starts here
  long mode = 0;     // approximate summand mode
  double peak = 0.0; // estimated log of the peak term
};

// Locate the approximate maximum of s(k) on [0, cap] by coarse scanning,
// then find the edge where s falls 55 log-units below the peak.
template <class LogSummand>
Window locate_window(const LogSummand& s, long cap, bool edge_above) {
  Window w;
  const long steps = 96;
  const double step = std::fmax(1.0, static_cast<double>(cap) / steps);
  double best = -std::numeric_limits<double>::infinity();
  for (double t = 0.0; t <= static_cast<double>(cap); t += step) {
    const long k = std::lround(t);
    const double v = s(k);
    if (v > best) {
      best = v;
      w.mode = k;
    }
  }
  // local refinement
  const long r = std::lround(step);
  for (long k = std::max(0L, w.mode - r); k <= std::min(cap, w.mode + r);
       k += std::max(1L, r / 16)) {
    const double v = s(k);
    if (v > best) {
      best = v;
      w.mode = k;
    }
  }
  w.peak = best;
  long edge = w.mode;
  double stride = 1.0;
  while (true) {
    long next = edge_above ? edge + std::lround(stride) : edge - std::lround(stride);
    if (!edge_above && next <= 0) { edge = 0; break; }
    if (edge_above && next >= cap) { edge = cap; break; }
    if (s(next) < best - 55.0) {
      if (stride <= 1.5) { edge = next; break; }
      stride = 1.0;  // restart fine scan from current edge
      continue;
    }
    edge = next;
    stride *= 2.0;
  }
  w.start = edge;
  return w;
}

// ---------------------------------------------------------------------------
// All-positive series for the two tails (mu >= 1 or >= 0.5 both fine):
//   P_mu(x, y) = sum_m D(mu+m, y) Q(m+1, x)       (upward, both factors stable)
//   Q_mu(x, y) = Q(mu, y) + sum_j D(mu+j, y) P(j+1, x)   (downward)
// Factors are carried by stable recurrences; streams that start below the
// representable range are re-seeded from their running logarithms.
// ---------------------------------------------------------------------------

double poisson_pmf(long k, double x) {  // e^{-x} x^k / k!
  if (k == 0) return std::exp(-x);
  return dterm(static_cast<double>(k), x);
}

double central_tail(double a, double x, bool upper) {
  const CdfResult r = cdf_central(DistributionKind::gamma_form, a, x);
  return upper ? r.prob.q : r.prob.p;
}

// The product of a rising and a falling stream peaks near the balance
// index m* with (m*)(mu + m*) = x y; the window must reach past it.
double window_cap(double mu, double x, double y) {
  const double balance = 0.5 * (-mu + std::sqrt(mu * mu + 4.0 * x * y));
  const double base =
      std::fmax(std::fmax(0.0, y - mu), std::fmax(x, balance));
  return base + 12.0 * std::sqrt(base + y + 1.0) + 80.0;
}

double series_lower_tail(double mu, double x, double y, ComputationStatus& st) {
  // sum_m D(mu+m, y) Q(m+1, x), m upward from the window start.
  const long cap = std::lround(window_cap(mu, x, y));
  auto s_est = [&](long m) {
    return log_D_est(mu + m, y) + log_Q_est(m + 1.0, x);
  };
  const Window w = locate_window(s_est, cap, /*edge_above=*/false);
  if (w.peak < -705.0) {
    st = {StatusCode::overflow_underflow, "noncentral tail underflow"};
    return 0.0;
  }
  const long m0 = w.start;
  double Dv = dterm(mu + m0, y);
  double lD = static_cast<double>(detail::dterm_log_ld(mu + m0, y));
  double Qv = central_tail(m0 + 1.0, x, /*upper=*/true);
  double wv = poisson_pmf(m0, x);
  double lw = m0 == 0 ? -x
                      : static_cast<double>(
                            detail::dterm_log_ld(static_cast<double>(m0), x));
  double sum = 0.0;
  double peak_seen = 0.0;
  for (long m = m0; m <= cap + 400; ++m) {
    const double term = Dv * Qv;
    sum += term;
    peak_seen = std::fmax(peak_seen, term);
    if (m > w.mode && term < sum * 1e-17 && term <= peak_seen * 1e-18) break;
    // advance the streams to m+1: Q(m+2,x) = Q(m+1,x) + w_{m+1}
    lw += std::log(x / (m + 1.0));
    wv = wv > 0.0 ? wv * (x / (m + 1.0)) : (lw > -705.0 ? std::exp(lw) : 0.0);
    Qv += wv;
    lD += std::log(y / (mu + m + 1.0));
    Dv = Dv > 0.0 ? Dv * (y / (mu + m + 1.0)) : (lD > -705.0 ? std::exp(lD) : 0.0);
  }
  if (sum < 1e-305) {
    st = {StatusCode::overflow_underflow, "noncentral tail underflow"};
    return 0.0;
  }
  return sum;
}

double series_upper_tail(double mu, double x, double y, ComputationStatus& st) {
  // Q(mu, y) + sum_j D(mu+j, y) P(j+1, x), j downward from the window edge.
  const long cap = std::lround(window_cap(mu, x, y));
  auto s_est = [&](long j) {
    return log_D_est(mu + j, y) + log_P_est(j + 1.0, x);
  };
  const Window w = locate_window(s_est, cap, /*edge_above=*/true);
  const double q0 = central_tail(mu, y, /*upper=*/true);  // Q(mu, y)
  if (w.peak < -705.0) {
    if (q0 < 1e-305) {
      st = {StatusCode::overflow_underflow, "noncentral tail underflow"};
      return 0.0;
    }
    return q0;
  }
  const long j0 = w.start;
  double Dv = dterm(mu + j0, y);
  double lD = static_cast<double>(detail::dterm_log_ld(mu + j0, y));
  double Pv = central_tail(j0 + 1.0, x, /*upper=*/false);
  double wv = poisson_pmf(j0, x);
  double lw = j0 == 0 ? -x : static_cast<double>(detail::dterm_log_ld(static_cast<double>(j0), x));
  double sum = 0.0;
  double peak_seen = 0.0;
  for (long j = j0; j >= 0; --j) {
    const double term = Dv * Pv;
    sum += term;
    peak_seen = std::fmax(peak_seen, term);
    if (j < w.mode && term < sum * 1e-17 && term <= peak_seen * 1e-18) break;
    if (j == 0) break;
    // advance the streams to j-1
    Pv += wv;
    lw += std::log(j / x);
    wv = wv > 0.0 ? wv * (j / x) : (lw > -705.0 ? std::exp(lw) : 0.0);
    lD += std::log((mu + j) / y);
    Dv = Dv > 0.0 ? Dv * ((mu + j) / y) : (lD > -705.0 ? std::exp(lD) : 0.0);
  }
  const double total = q0 + sum;
  if (total < 1e-305) {
    st = {StatusCode::overflow_underflow, "noncentral tail underflow"};
    return 0.0;
  }
  return total;
}

void noncentral_core(double mu, double x, double y, double& p, double& q,
                     ComputationStatus& st) {
  st = ComputationStatus{};
  if (y == 0.0) {
    p = 0.0;
    q = 1.0;
    return;
  }
  if (x == 0.0) {
    const CdfResult c = cdf_central(DistributionKind::gamma_form, mu, y);
    p = c.prob.p;
    q = c.prob.q;
    st = c.status;
    return;
  }
  if (mu < 1.0) {
    // One backward step of the three-term recurrence
    //   y_{mu+2} - (1 + c) y_{mu+1} + c y_mu = 0,
    //   c = sqrt(y/x) I_{mu+1}(2 sqrt(xy)) / I_mu(2 sqrt(xy)),
    // from directly computed values at mu+1 and mu+2.
    double p1, q1, p2, q2;
    ComputationStatus s1, s2;
    noncentral_core(mu + 1.0, x, y, p1, q1, s1);
    noncentral_core(mu + 2.0, x, y, p2, q2, s2);
    const bool upper_small = y >= x + mu;
    if (!s1.ok() || !s2.ok()) {
      st = s1.ok() ? s2 : s1;
      if (upper_small) { q = 0.0; p = 1.0; }
      else { p = 0.0; q = 1.0; }
      return;
    }
    const double c = std::sqrt(y / x) * bessel_ratio(mu + 1.0, 2.0 * std::sqrt(x * y));
    if (upper_small) {
      q = ((1.0 + c) * q1 - q2) / c;
      if (q < 0.0) q = 0.0;
      p = 1.0 - q;
      if (q == 0.0) st = {StatusCode::overflow_underflow, "noncentral tail underflow"};
    } else {
      p = ((1.0 + c) * p1 - p2) / c;
      if (p < 0.0) p = 0.0;
      q = 1.0 - p;
      if (p == 0.0) st = {StatusCode::overflow_underflow, "noncentral tail underflow"};
    }
    return;
  }
  const bool upper_small = y >= x + mu;
  if (upper_small) {
    q = series_upper_tail(mu, x, y, st);
    p = 1.0 - q;
  } else {
    p = series_lower_tail(mu, x, y, st);
    q = 1.0 - p;
  }
}

bool in_box(double v) { return v >= 0.0 && v <= 1e4; }

}  // namespace

double bessel_ratio(double mu, double z) {
  if (!(mu >= 0.5) || !(z > 0.0))
    throw std::domain_error("bessel_ratio: requires mu >= 0.5, z > 0");
  if (z >= 8000.0 && z >= 100.0 * mu * mu) {
    // Large-argument expansion of the ratio, from the recurrence
    // R(mu) (2 mu / z + R(mu+1)) = 1 with R ~ 1 + a1/z + a2/z^2 + ...
    const double b2 = (2.0 * mu - 1.0) * (2.0 * mu - 3.0) / 8.0;
    const double d4 = -std::pow(mu, 4) / 8.0 + 0.5 * std::pow(mu, 3) +
                      mu * mu / 16.0 - 9.0 * mu / 8.0 + 63.0 / 128.0;
    const double iz = 1.0 / z;
    return 1.0 + iz * (-(mu - 0.5) + iz * (b2 + iz * (b2 + iz * d4)));
  }
  // I_mu(z)/I_{mu-1}(z) = 1 / (2 mu / z + 1 / (2 (mu+1) / z + ...)).
  const double tiny = 1e-290;
  double b = 2.0 * mu / z;
  if (b == 0.0) b = tiny;
  double f = b;
  double c = f;
  double d = 0.0;
  for (int k = 1; k <= 10000; ++k) {
    b = 2.0 * (mu + k) / z;
    d = b + d;
    if (d == 0.0) d = tiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) return 1.0 / f;
  }
  throw std::runtime_error("bessel_ratio: continued fraction did not converge");
}

CdfResult cdf_noncentral(DistributionKind kind, const NoncentralArgs& args) {
  double mu = args.mu, x = args.x, y = args.y;
  if (kind == DistributionKind::chi_square_form) {
    mu *= 0.5;
    x *= 0.5;
    y *= 0.5;
  }
  CdfResult out;
  if (!std::isfinite(mu) || !std::isfinite(x) || !std::isfinite(y) ||
      mu < 0.5 || mu > 1e4 || !in_box(x) || !in_box(y)) {
    out.status = {StatusCode::out_of_range,
                  "cdf_noncentral: requires 0.5 <= mu <= 1e4, 0 <= x, y <= 1e4"};
    out.prob = {kNaN, kNaN};
    return out;
  }
  noncentral_core(mu, x, y, out.prob.p, out.prob.q, out.status);
  return out;
}

namespace {

// Fourth-order polish of s = sqrt(x) on the mu = 1/2 closed form
//   Q_{1/2}(s^2, y) = (erfc(s + c) + erfc(c - s)) / 2, c = sqrt(y).
double half_mu_seed(double y, double q) {
  const double c = std::sqrt(y);
  const double iv = inverfc(2.0 * q);
  double s = c - iv;
  if (!(s > 0.0)) return 0.0;
  for (int it = 0; it < 4; ++it) {
    const double em = std::exp(-(c - s) * (c - s));
    const double ep = std::exp(-(s + c) * (s + c));
    const double g = 0.5 * (erfc(s + c) + erfc(c - s)) - q;
    const double g1 = (em - ep) * detail::kOneOverSqrtPi;
    if (g1 <= 0.0) break;
    const double g2 = (2.0 * (c - s) * em + 2.0 * (s + c) * ep) * detail::kOneOverSqrtPi;
    const double g3 = ((4.0 * (c - s) * (c - s) - 2.0) * em +
                       (2.0 - 4.0 * (s + c) * (s + c)) * ep) * detail::kOneOverSqrtPi;
    const double u = g / g1;
    const double t2 = g2 / g1;
    const double t3 = g3 / g1;
    const double du = -u - 0.5 * t2 * u * u -
                      (3.0 * t2 * t2 - t3) / 6.0 * u * u * u;
    s += du;
    if (!(s > 0.0)) {
      s = 1e-8;
      break;
    }
    if (std::fabs(du) < 1e-14 * s) break;
  }
  return s * s;
}

struct EvalResult {
  double p = kNaN, q = kNaN;
};

// Underflowed tails come back as exact 0/1 pairs, still usable as
// bracketing information.
EvalResult eval_pair(double mu, double x, double y) {
  EvalResult r;
  ComputationStatus st;
  noncentral_core(mu, x, y, r.p, r.q, st);
  return r;
}

}  // namespace

InversionResult inv_noncentral(DistributionKind kind, InversionTarget target,
                               double mu, double p, double q, double fixed) {
  InversionResult out;
  out.value = kNaN;
  const bool chi = kind == DistributionKind::chi_square_form;
  if (chi) {
    mu *= 0.5;
    fixed *= 0.5;
  }
  if (!std::isfinite(mu) || !std::isfinite(p) || !std::isfinite(q) ||
      !std::isfinite(fixed) || !(p > 0.0) || !(q > 0.0) || p > 1.0 || q > 1.0 ||
      std::fabs(p + q - 1.0) > 1e-10 || p < 1e-25 || q < 1e-35 ||
      mu < 0.5 || mu > 1e4 || !in_box(fixed)) {
    out.status = {StatusCode::out_of_range, "inv_noncentral: invalid arguments"};
    return out;
  }
  const bool anchor_p = p <= q;
  const double anchor = std::fmin(p, q);
  const double scale = chi ? 2.0 : 1.0;

  if (target == InversionTarget::noncentrality_x) {
    const double y = fixed;
    const CdfResult c0 = cdf_central(DistributionKind::gamma_form, mu, y);
    const double p0 = c0.prob.p, q0 = c0.prob.q;
    // Feasibility: Q_mu(x, y) increases with x from Q_mu(0, y) = Q(mu, y).
    const bool reject = q0 <= 0.5 ? q < q0 * (1.0 - 4e-16) : p > p0 * (1.0 + 4e-16);
    if (reject) {
      out.status = {StatusCode::infeasible, "inv_noncentral: q below Q_mu(0, y)"};
      return out;
    }
    if (std::fabs(q - q0) <= 4e-16 * q0) {
      out.value = 0.0;
      return out;
    }
    // Residual increasing in x on the anchored side.
    auto F = [&](double x) {
      const EvalResult r = eval_pair(mu, x, y);
      return anchor_p ? p - r.p : r.q - q;
    };
    const double fbox = F(1e4);
    if (fbox < 0.0) {
      out.status = {StatusCode::max_iterations,
                    "inv_noncentral: root beyond the admissible box"};
      return out;
    }
    // Seeds: Gaussian moment matching, and the mu = 1/2 closed form for
    // mu near 1/2 with small q.
    double x0;
    {
      const double zp = normal_quantile(p);
      const double disc = zp * zp + 2.0 * y - mu;
      if (disc > 0.0) {
        const double s = -zp + std::sqrt(disc);
        x0 = std::fmax(0.5 * (s * s - mu), 1e-6);
      } else {
        x0 = 1e-6;
      }
    }
    if (mu <= 0.6 && q <= 0.05) {
      const double xc = half_mu_seed(y, q);
      if (xc > 0.0) x0 = xc;
    }
    x0 = std::fmin(x0, 1e4);
    // Bracket and secant refinement.
    double lo = 0.0, hi = 1e4;
    double x1 = x0, f1 = F(x1);
    double xp, fp;  // previous iterate for the secant
    if (f1 < 0.0) {
      lo = x1;
      xp = hi;
      fp = fbox;
    } else {
      hi = x1;
      xp = lo;
      fp = anchor_p ? p - p0 : q0 - q;
    }
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      if (std::fabs(f1) <= 1e-13 * anchor) { converged = true; break; }
      double xn;
      if (f1 != fp) {
        xn = x1 - f1 * (x1 - xp) / (f1 - fp);
      } else {
        xn = 0.5 * (lo + hi);
      }
      if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
      const double fn = F(xn);
      xp = x1; fp = f1;
      x1 = xn; f1 = fn;
      if (fn < 0.0) lo = xn;
      else hi = xn;
      if (std::fabs(x1 - xp) <= 1e-12 * std::fmax(std::fabs(x1), 1e-8)) {
        converged = true;
        break;
      }
    }
    if (!converged)
      out.status = {StatusCode::max_iterations, "inv_noncentral: secant cap reached"};
    out.value = scale * x1;
    return out;
  }

  // target == quantile_y, fixed = x
  const double x = fixed;
  if (x == 0.0) {
    InversionResult c = inv_central(DistributionKind::gamma_form, mu, p, q);
    out.value = scale * c.value;
    switch (c.status.code) {
      case StatusCode::ok: break;
      case StatusCode::max_iterations:
        out.status = {StatusCode::max_iterations, c.status.detail};
        break;
      case StatusCode::out_of_range:
        out.status = {StatusCode::out_of_range, c.status.detail};
        break;
      default:
        out.status = {StatusCode::subcomputation_failure, c.status.detail};
        break;
    }
    return out;
  }
  auto G = [&](double yv) {
    const EvalResult r = eval_pair(mu, x, yv);
    return anchor_p ? r.p - p : q - r.q;
  };
  const double gbox = G(1e4);
  if (gbox < 0.0) {
    out.status = {StatusCode::max_iterations,
                  "inv_noncentral: root beyond the admissible box"};
    return out;
  }
  double y0;
  {
    const double zp = normal_quantile(p);
    y0 = mu + x + zp * std::sqrt(mu + 2.0 * x);
    if (!(y0 > 0.0)) {
      // deep lower tail: leading term P_mu(x, y) ~ e^{-x} P(mu, y)
      y0 = 1e-6;
      if (x < 600.0) {
        const double pe = p * std::exp(x);
        if (pe < 0.4) {
          const InversionResult ic =
              inv_central(DistributionKind::gamma_form, mu, pe, 1.0 - pe);
          if (ic.status.ok() && ic.value > 0.0) y0 = ic.value;
        }
      }
    }
    y0 = std::fmin(std::fmax(y0, 1e-8), 1e4);
  }
  double lo = 0.0, hi = 1e4;
  double x1 = y0, f1 = G(x1);
  double xp, fp;
  if (f1 < 0.0) {
    lo = x1;
    xp = hi; fp = gbox;
  } else {
    hi = x1;
    xp = lo;
    fp = anchor_p ? -p : q - 1.0;  // G(0)
  }
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    if (std::fabs(f1) <= 1e-13 * anchor) { converged = true; break; }
    double xn;
    if (f1 != fp) {
      xn = x1 - f1 * (x1 - xp) / (f1 - fp);
    } else {
      xn = 0.5 * (lo + hi);
    }
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    const double fn = G(xn);
    xp = x1; fp = f1;
    x1 = xn; f1 = fn;
    if (fn < 0.0) lo = xn;
    else hi = xn;
    if (std::fabs(x1 - xp) <= 1e-12 * std::fmax(std::fabs(x1), 1e-8)) {
      converged = true;
      break;
    }
  }
  if (!converged)
    out.status = {StatusCode::max_iterations, "inv_noncentral: secant cap reached"};
  out.value = scale * x1;
  return out;
}

}  // namespace gamdist
