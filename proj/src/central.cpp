#include "gamdist/central.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "gamdist/erf.hpp"
#include "gamdist/eta_expansion.hpp"
#include "gamdist/gamma.hpp"
#include "series_tables.hpp"

namespace gamdist {

namespace {

constexpr double kLogTiny = -745.0;  // below this exp() underflows to 0

// Taylor series factor for P: P = D(a,x) * sum_{n>=0} x^n / ((a+1)...(a+n)).
double ptaylor_sum(double a, double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term <= sum * 1e-17) {
      const double r = x / (a + n + 1);
      if (r < 1.0) sum += term * r / (1.0 - r);
      break;
    }
  }
  return sum;
}

// Legendre continued fraction H(a, x) with Q = D(a,x) * a * H, evaluated by
// the modified Lentz scheme. Requires x >= 1 and x + 1 > a.
double qfraction_H(double a, double x) {
  const double tiny = 1e-290;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) <= 1e-17) break;
  }
  return h;
}

// Q(a, x) for x < 1 and a <= alpha(x) <= 1, cancellation-free:
//   Q = [Gamma(1+a) - x^a]/Gamma(1+a)
//       - (a x^a / Gamma(1+a)) sum_{k>=1} (-x)^k / (k! (a+k)).
double qtaylor(double a, double x) {
  const long double al = a;
  const long double xl = x;
  const long double g = expm1l(detail::lgam1p_ld(al));  // Gamma(1+a) - 1
  const long double e = expm1l(al * logl(xl));          // x^a - 1
  const long double u = (g - e) / (1.0L + g);
  long double s = 0.0L;
  long double term = 1.0L;
  for (int k = 1; k <= 60; ++k) {
    term *= -xl / k;
    const long double add = term / (al + k);
    s += add;
    if (fabsl(add) < 1e-20L) break;
  }
  const long double v = -al * (1.0L + e) / (1.0L + g) * s;
  return static_cast<double>(u + v);
}

// S_a(eta) = sum_n C_n(eta) / a^n from the recursive coefficient scheme,
// realized on the Maclaurin coefficients of f (each level differentiates
// the previous one in series space).
const std::vector<std::vector<double>>& f_level_tables() {
  static const std::vector<std::vector<double>> levels = [] {
    std::vector<std::vector<double>> lv;
    lv.emplace_back(detail::kFSeries.begin(), detail::kFSeries.end());
    for (int n = 1; n <= 10; ++n) {
      const auto& prev = lv.back();
      if (prev.size() < 3) break;
      std::vector<double> next(prev.size() - 2);
      for (std::size_t k = 0; k < next.size(); ++k)
        next[k] = (k + 1) * prev[k + 2];
      lv.push_back(std::move(next));
    }
    return lv;
  }();
  return levels;
}

double ua_saeta(double a, double eta) {
  const auto& levels = f_level_tables();
  double s = 0.0;
  double apow = 1.0;
  for (const auto& c : levels) {
    // C_n(eta) = -(c_1 + c_2 eta + c_3 eta^2 + ...)
    double cn = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) cn = cn * eta + c[k];
    cn = -cn;
    const double term = cn / apow;
    s += term;
    if (std::fabs(term) < 1e-17 * std::fabs(s)) break;
    apow *= a;
  }
  return s;
}

// Uniform asymptotic representation of the smaller tail for a >= 30 and
// |eta| <= 1: tail = e^{-a phi} (erfcx(z)/2 -+ S_a(eta)/(sqrt(2 pi a) Gamma*)),
// minus sign for eta >= 0 (upper tail), plus sign for eta < 0 (lower tail).
double ua_smaller_tail(double a, double x, double eta, bool& underflow) {
  underflow = false;
  const long double al = a;
  const long double aphi = al * detail::lambda_phi_ld(static_cast<long double>(x) / al);
  const double z = std::sqrt(static_cast<double>(aphi));  // |eta| sqrt(a/2)
  const double ecx = z > 0.0 ? erfc_scaled(z) : 1.0;
  int n;
  long double bnd;
  const double gs = std::exp(static_cast<double>(detail::stirling_series_ld(al, n, bnd)));
  const double corr = ua_saeta(a, eta) / (detail::kSqrt2Pi * std::sqrt(a) * gs);
  const double bracket = eta >= 0.0 ? 0.5 * ecx - corr : 0.5 * ecx + corr;
  const long double tail = expl(-aphi) * static_cast<long double>(bracket);
  if (tail < 1e-308L) {
    underflow = true;
    return 0.0;
  }
  return static_cast<double>(tail);
}

double alpha_crossover(double x) {
  if (x >= 0.5) return x;
  constexpr double kLnHalf = -0.6931471805599453094;
  return kLnHalf / std::log(0.5 * x);
}

// Core evaluation in the gamma parameterization; a > 0, x >= 0 validated.
void cdf_core(double a, double x, double& p, double& q, ComputationStatus& st) {
  st = ComputationStatus{};
  if (x == 0.0) {
    p = 0.0;
    q = 1.0;
    return;
  }
  if (a == 1.0) {  // analytic special case, smaller tail first
    if (x <= 0.6931471805599453) {
      p = -std::expm1(-x);
      q = 1.0 - p;
    } else {
      q = std::exp(-x);
      p = 1.0 - q;
      if (q == 0.0) st = {StatusCode::overflow_underflow, "tail underflow"};
    }
    return;
  }
  if (a > alpha_crossover(x)) {
    // Lower tail is the safe one here (x below the bulk).
    if (a >= 30.0) {
      const double eta = lambda_to_eta(x / a);
      if (eta >= -1.0) {
        bool uf;
        p = ua_smaller_tail(a, x, eta, uf);
        q = 1.0 - p;
        if (uf) st = {StatusCode::overflow_underflow, "tail underflow"};
        return;
      }
    }
    const long double lp =
        detail::dterm_log_ld(a, x) + logl(static_cast<long double>(ptaylor_sum(a, x)));
    if (lp < kLogTiny) {
      p = 0.0;
      q = 1.0;
      st = {StatusCode::overflow_underflow, "tail underflow"};
      return;
    }
    p = static_cast<double>(expl(lp));
    q = 1.0 - p;
    return;
  }
  if (x < 1.0) {
    q = qtaylor(a, x);
    p = 1.0 - q;
    return;
  }
  if (a >= 30.0) {
    const double eta = lambda_to_eta(x / a);
    if (eta <= 1.0) {
      bool uf;
      q = ua_smaller_tail(a, x, eta, uf);
      p = 1.0 - q;
      if (uf) st = {StatusCode::overflow_underflow, "tail underflow"};
      return;
    }
  }
  const long double lq = detail::dterm_log_ld(a, x) +
                         logl(static_cast<long double>(a)) +
                         logl(static_cast<long double>(qfraction_H(a, x)));
  if (lq < kLogTiny) {
    q = 0.0;
    p = 1.0;
    st = {StatusCode::overflow_underflow, "tail underflow"};
    return;
  }
  q = static_cast<double>(expl(lq));
  p = 1.0 - q;
}

// log-space derivative P'(a, x) = x^{a-1} e^{-x} / Gamma(a).
long double pderiv_ld(double a, double x) {
  return expl(detail::dterm_log_ld(a, x) + logl(static_cast<long double>(a)) -
              logl(static_cast<long double>(x)));
}

}  // namespace

CdfResult cdf_central(DistributionKind kind, double a, double x) {
  CdfResult out;
  if (kind == DistributionKind::chi_square_form) {
    a *= 0.5;
    x *= 0.5;
  }
  if (!std::isfinite(a) || !std::isfinite(x) || !(a > 1e-300) || !(x >= 0.0)) {
    out.status = {StatusCode::out_of_range, "cdf_central: requires a > 1e-300, x >= 0"};
    out.prob = {std::numeric_limits<double>::quiet_NaN(),
                std::numeric_limits<double>::quiet_NaN()};
    return out;
  }
  cdf_core(a, x, out.prob.p, out.prob.q, out.status);
  return out;
}

InversionResult inv_central(DistributionKind kind, double a, double p, double q) {
  InversionResult out;
  out.value = std::numeric_limits<double>::quiet_NaN();
  const bool chi = kind == DistributionKind::chi_square_form;
  if (chi) a *= 0.5;
  if (!std::isfinite(a) || !(a > 0.0) || !std::isfinite(p) || !std::isfinite(q) ||
      !(p > 0.0) || !(q > 0.0) || p > 1.0 || q > 1.0 ||
      std::fabs(p + q - 1.0) > 1e-10 || std::fmin(p, q) < 1e-150) {
    out.status = {StatusCode::out_of_range, "inv_central: invalid arguments"};
    return out;
  }
  if (a == 1.0) {
    out.value = p <= 0.5 ? -std::log1p(-p) : -std::log(q);
    if (chi) out.value *= 2.0;
    return out;
  }

  const bool anchor_p = p <= q;
  const double anchor = std::fmin(p, q);

  // Candidate seeds; keep the one with the smallest anchored residual.
  std::vector<double> seeds;
  {
    // Leading Taylor inversion x = (p Gamma(1+a))^{1/a}, for small lower tail.
    const long double lt =
        (logl(static_cast<long double>(p)) + detail::loggam_ld(a + 1.0L)) /
        static_cast<long double>(a);
    if (lt < -690.7L) {  // root below ~1e-300: not invertible in doubles
      out.status = {StatusCode::overflow_underflow,
                    "inv_central: root below representable range"};
      return out;
    }
    const double t = static_cast<double>(expl(lt));
    if (t < 0.2 * (a + 1.0)) seeds.push_back(t * (1.0 + t / (a + 1.0)));
    // Exponential tail bound for small upper tail.
    if (q < 0.5) {
      const double B = -std::log(q) - static_cast<double>(detail::loggam_ld(a));
      if (B > 1.0) {
        double xq = B;
        for (int i = 0; i < 4; ++i)
          xq = std::fmax(0.5 * B, B + (a - 1.0) * std::log(xq));
        if (xq > a + 1.0) seeds.push_back(xq);
      }
    }
    // Asymptotic inversion expansion through the standard form.
    static const EtaFrame frame = EtaFrame::gamma_frame(1.0, 1.0);
    const double eta = invert_expansion(a, p, frame).eta;
    const double lam = eta_to_lambda(eta);
    if (std::isfinite(lam) && lam > 0.0) seeds.push_back(a * lam);
  }

  double x = 0.0;
  double best_r = std::numeric_limits<double>::infinity();
  for (double s : seeds) {
    if (!(s > 0.0) || !std::isfinite(s)) continue;
    ComputationStatus st;
    double pp, qq;
    cdf_core(a, s, pp, qq, st);
    const double r = anchor_p ? std::fabs(pp - p) : std::fabs(qq - q);
    if (r < best_r) {
      best_r = r;
      x = s;
    }
  }
  if (!(x > 0.0)) x = a;  // last-resort bulk seed

  // Bracketed Halley refinement (third order, capped at 35 iterations).
  double lo = 0.0;
  double hi = std::fmax(4.0 * a + 1400.0, 2.0 * x);
  {
    ComputationStatus st;
    double pp, qq;
    cdf_core(a, hi, pp, qq, st);
    int guard = 0;
    while (pp < p && guard++ < 60) {
      hi *= 2.0;
      cdf_core(a, hi, pp, qq, st);
    }
  }
  auto residual = [&](double xx) {
    ComputationStatus st;
    double pp, qq;
    cdf_core(a, xx, pp, qq, st);
    return anchor_p ? pp - p : -(qq - q);  // increasing in x
  };

  bool converged = false;
  for (int it = 0; it < 35; ++it) {
    const double r_anchor = residual(x);
    if (std::fabs(r_anchor) <= 2e-15 * anchor) {
      converged = true;
      break;
    }
    if (r_anchor < 0.0) lo = x;
    else hi = x;
    const long double dp = pderiv_ld(a, x);
    double xn;
    if (dp > 0.0L && std::isfinite(static_cast<double>(dp))) {
      const double u = static_cast<double>(static_cast<long double>(r_anchor) / dp);
      const double kappa = (a - 1.0) / x - 1.0;  // P''/P'
      const double hcorr = 0.5 * u * kappa;
      const double step = (std::fabs(hcorr) < 0.5) ? u / (1.0 - hcorr) : u;
      xn = x - step;
    } else {
      xn = 0.5 * (lo + hi);
    }
    if (xn == x) {
      converged = true;
      break;
    }
    if (!(xn > lo && xn < hi)) {
      xn = 0.5 * (lo + hi);
      if (xn == x) {
        converged = true;
        break;
      }
    }
    const bool tiny_step = std::fabs(xn - x) <= 4.4e-16 * std::fmax(xn, 1e-290);
    x = xn;
    if (tiny_step) {
      converged = true;
      break;
    }
  }
  if (converged) {
    // Land on the neighboring double with the smallest anchored residual;
    // near the lattice limit the Newton exit can be a few ulps off the
    // best attainable point.
    double best_x = x;
    double best_r = std::fabs(residual(x));
    for (int k = -3; k <= 3; ++k) {
      if (k == 0) continue;
      double xx = x;
      for (int j = 0; j < std::abs(k); ++j)
        xx = std::nextafter(xx, k > 0 ? 1e308 : 0.0);
      if (!(xx > 0.0)) continue;
      const double r = std::fabs(residual(xx));
      if (r < best_r) {
        best_r = r;
        best_x = xx;
      }
    }
    x = best_x;
  } else {
    out.status = {StatusCode::max_iterations, "inv_central: Newton cap reached"};
  }
  out.value = chi ? 2.0 * x : x;
  return out;
}

}  // namespace gamdist
