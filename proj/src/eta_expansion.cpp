#include "gamdist/eta_expansion.hpp"

#include <cmath>
#include <stdexcept>

#include "gamdist/erf.hpp"
#include "gamdist/gamma.hpp"
#include "series_tables.hpp"

namespace gamdist {

namespace {

double poly_eval(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) r = r * x + c[k];
  return r;
}

// d-th derivative of the polynomial at x.
double poly_deriv(const std::vector<double>& c, double x, int d) {
  double r = 0.0;
  for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(d);) {
    double f = 1.0;
    for (int j = 0; j < d; ++j) f *= static_cast<double>(k - j);
    r = r * x + f * c[k];
  }
  return r;
}

double fd_derivative(const std::function<double(double)>& g, double x) {
  const double h = 1e-3;
  return (-g(x + 2 * h) + 8.0 * g(x + h) - 8.0 * g(x - h) + g(x - 2 * h)) /
         (12.0 * h);
}

// f for the incomplete-gamma standard form as an exact functional,
// usable outside the series' comfortable range.
double gamma_f(double eta) {
  if (std::fabs(eta) < 0.25) {
    static const std::vector<double> series(detail::kFSeries.begin(),
                                            detail::kFSeries.end());
    return poly_eval(series, eta);
  }
  return eta / (eta_to_lambda(eta) - 1.0);
}

}  // namespace

double lambda_to_eta(double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda_to_eta: requires lambda > 0");
  const double v = lambda - 1.0;
  if (std::fabs(v) <= 0.1) {
    double s = 0.0;
    for (std::size_t k = detail::kEtaOfV.size(); k-- > 0;)
      s = s * v + detail::kEtaOfV[k];
    return v * s;
  }
  const long double phi = detail::lambda_phi_ld(lambda);
  const double e = static_cast<double>(sqrtl(2.0L * phi));
  return v > 0.0 ? e : -e;
}

double eta_to_lambda(double eta) {
  if (std::isnan(eta)) return eta;
  if (std::fabs(eta) <= 0.9) {
    double s = 0.0;
    for (std::size_t k = detail::kTauSeries.size(); k-- > 0;)
      s = s * eta + detail::kTauSeries[k];
    return 1.0 + eta * s;
  }
  const long double half_e2 = 0.5L * static_cast<long double>(eta) * eta;
  long double lam;
  if (eta > 0.0) {
    // lambda - log(lambda) = 1 + eta^2/2, lambda > 1
    lam = 1.0L + half_e2;
    for (int i = 0; i < 4; ++i) lam = 1.0L + half_e2 + logl(lam);
  } else {
    // small-lambda branch: lambda = exp(lambda - 1 - eta^2/2)
    lam = expl(-1.0L - half_e2);
    for (int i = 0; i < 4; ++i) lam = expl(lam - 1.0L - half_e2);
  }
  // Newton polish on phi(lambda) - eta^2/2.
  for (int i = 0; i < 32; ++i) {
    const long double g = detail::lambda_phi_ld(lam) - half_e2;
    const long double gp = 1.0L - 1.0L / lam;
    const long double step = g / gp;
    lam -= step;
    if (fabsl(step) <= 1e-17L * fabsl(lam)) break;
  }
  return static_cast<double>(lam);
}

std::vector<double> f_gamma_series(int order) {
  if (order < 1 || order > 8)
    throw std::invalid_argument("f_gamma_series: order must be in [1, 8]");
  return {detail::kFSeries.begin(), detail::kFSeries.begin() + order + 1};
}

CoefficientScheme coefficient_scheme(const std::function<double(double)>& f,
                                     double eta, int depth) {
  if (depth < 0 || depth > 3)
    throw std::invalid_argument("coefficient_scheme: depth must be in [0, 3]");
  CoefficientScheme out;
  std::function<double(double)> fn = f;
  for (int n = 0; n <= depth; ++n) {
    const double fn0 = fn(0.0);
    out.A.push_back(fn0);
    if (std::fabs(eta) < 1e-7) {
      out.C.push_back(-fd_derivative(fn, 0.0));
    } else {
      out.C.push_back((fn0 - fn(eta)) / eta);
    }
    if (n == depth) break;
    auto g = [fn, fn0](double e) {
      if (std::fabs(e) < 1e-7) {
        const double h = 1e-3;
        return (fn(e + h) - fn(e - h)) / (2.0 * h);
      }
      return (fn(e) - fn0) / e;
    };
    fn = [g](double e) { return fd_derivative(g, e); };
  }
  return out;
}

EtaFrame EtaFrame::gamma_frame(double a, double lambda) {
  if (!(a > 0.0) || !(lambda > 0.0))
    throw std::domain_error("EtaFrame: requires a > 0, lambda > 0");
  EtaFrame fr;
  fr.a = a;
  fr.lambda = lambda;
  fr.eta = lambda_to_eta(lambda);
  fr.f_series.assign(detail::kFSeries.begin(), detail::kFSeries.end());
  return fr;
}

EtaFrame EtaFrame::custom(double a, double lambda, std::vector<double> series) {
  EtaFrame fr;
  fr.a = a;
  fr.lambda = lambda;
  fr.eta = lambda_to_eta(lambda);
  fr.f_series = std::move(series);
  return fr;
}

double EtaFrame::tau(double zeta) const { return eta_to_lambda(zeta); }

InversionExpansion invert_expansion(double a, double p, const EtaFrame& frame) {
  if (!(a > 0.0)) throw std::domain_error("invert_expansion: requires a > 0");
  InversionExpansion out;
  out.eta0 = normal_quantile(p) / std::sqrt(a);  // reduced equation app-style

  std::vector<double> c = frame.f_series;
  if (c.empty()) c.push_back(1.0);
  c.resize(std::max<std::size_t>(c.size(), 7), 0.0);
  const double a1 = c[1], a2 = c[2], a3 = c[3], a4 = c[4], a5 = c[5], a6 = c[6];
  const double A1 = a2;        // (1/2)_1 2^1 a_2
  const double A2 = 3.0 * a4;  // (1/2)_2 2^2 a_4
  out.A = {1.0, A1, A2};

  const double t = out.eta0;
  const bool gamma_like =
      frame.f_series.size() >= detail::kFSeries.size() &&
      frame.f_series[1] == detail::kFSeries[1];

  if (std::fabs(t) < 0.2) {
    // Taylor forms in eta0 (coefficients from the perturbation solution).
    out.eta1 = a1 + (a2 - 0.5 * a1 * a1) * t +
               (a3 - a1 * a2 + a1 * a1 * a1 / 3.0) * t * t +
               (a4 - a1 * a3 - 0.5 * a2 * a2 + a1 * a1 * a2 -
                0.25 * a1 * a1 * a1 * a1) * t * t * t;
    out.eta2 = (2.0 * a3 - a1 * a1 * a1 / 3.0) +
               (0.625 * a1 * a1 * a1 * a1 - 1.5 * a1 * a1 * a2 + 3.0 * a4) * t +
               (-13.0 / 15.0 * std::pow(a1, 5) + 10.0 / 3.0 * a1 * a1 * a1 * a2 -
                2.0 * a1 * a1 * a3 - 2.0 * a1 * a2 * a2 + 4.0 * a5) * t * t;
    out.eta3 = (4.0 / 15.0 * std::pow(a1, 5) - a1 * a1 * a1 * a2 / 3.0 -
                a1 * a1 * a3 + 8.0 * a5) +
               (-127.0 / 144.0 * std::pow(a1, 6) +
                67.0 / 24.0 * std::pow(a1, 4) * a2 + a1 * a1 * a1 * a3 / 3.0 -
                a1 * a1 * a2 * a2 - 1.5 * a1 * a1 * a4 - 4.0 * a1 * a2 * a3 +
                2.0 * a3 * a3 + 15.0 * a6) * t;
  } else {
    double f, fp, fpp;
    if (std::fabs(t) <= 1.0 || !gamma_like) {
      f = poly_eval(c, t);
      fp = poly_deriv(c, t, 1);
      fpp = poly_deriv(c, t, 2);
    } else {
      f = gamma_f(t);
      fp = fd_derivative(gamma_f, t);
      fpp = (gamma_f(t + 1e-3) - 2.0 * f + gamma_f(t - 1e-3)) / 1e-6;
    }
    const double Lp = fp / f;
    const double Lpp = fpp / f - Lp * Lp;
    const double e1 = std::log(f) / t;
    const double e1p = Lp / t - e1 / t;
    const double e1pp = Lpp / t - 2.0 * Lp / (t * t) + 2.0 * e1 / (t * t);
    out.eta1 = e1;
    out.eta2 = -A1 / t - e1 * e1 / (2.0 * t) + e1 * Lp / t + e1p / t;
    const double t2 = t * t;
    out.eta3 =
        (t2 * (A1 * A1 - 2.0 * A2 - e1p * e1p) + t2 * e1 * e1 * (fpp / f) -
         t2 * e1 * e1 * Lp * Lp +
         t * (2.0 * A1 * e1 + e1 * e1 * e1 - 4.0 * e1 * e1p + 2.0 * e1pp) -
         t * (2.0 * A1 * Lp + 3.0 * e1 * e1 * Lp - 2.0 * e1 * (fpp / f) -
              4.0 * e1p * Lp) +
         (2.0 * A1 + e1 * e1 - 2.0 * e1p) - 2.0 * e1 * Lp) /
        (2.0 * t2 * t);
  }
  out.eta = out.eta0 + out.eta1 / a + out.eta2 / (a * a) +
            out.eta3 / (a * a * a);
  return out;
}

}  // namespace gamdist
