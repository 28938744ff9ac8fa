#pragma once

#include <array>
#include <functional>
#include <vector>

namespace gamdist {

/// eta from lambda - log(lambda) - 1 = eta^2/2, sign(eta) = sign(lambda-1).
/// Monotone increasing; series-evaluated near lambda = 1.
double lambda_to_eta(double lambda);

/// Inverse of lambda_to_eta (Newton with branch-specific seeds).
double eta_to_lambda(double eta);

/// Maclaurin coefficients a_0..a_order of f(zeta) = zeta / (tau(zeta) - 1)
/// for the incomplete-gamma standard form; 1 <= order <= 8.
std::vector<double> f_gamma_series(int order);

struct CoefficientScheme {
  std::vector<double> A;  ///< A_n = f_n(0)
  std::vector<double> C;  ///< C_n(eta) = (f_n(0) - f_n(eta)) / eta
};

/// Recursive coefficient scheme f_{n+1} = d/deta [(f_n(eta) - f_n(0))/eta]
/// applied to a user-supplied analytic f, depth <= 3. Derivatives are
/// realized with 5-point central differences.
CoefficientScheme coefficient_scheme(const std::function<double(double)>& f,
                                     double eta, int depth);

/// Standard-form frame tying a CDF to the Gaussian-kernel representation.
struct EtaFrame {
  double a = 0.0;       ///< large parameter
  double lambda = 1.0;  ///< x / a
  double eta = 0.0;     ///< image of lambda under the transform
  std::vector<double> f_series;  ///< Maclaurin coefficients of f, a_0 = 1

  /// Frame for the incomplete-gamma f.
  static EtaFrame gamma_frame(double a, double lambda);
  /// Frame for a custom f given by its Maclaurin coefficients.
  static EtaFrame custom(double a, double lambda, std::vector<double> series);

  /// tau(zeta): inverse of tau - log(tau) - 1 = zeta^2/2.
  double tau(double zeta) const;
};

/// Result of the asymptotic inversion expansion
///   eta ~ eta0 + eta1/a + eta2/a^2 + eta3/a^3.
struct InversionExpansion {
  double eta0 = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta3 = 0.0;
  std::array<double, 3> A{1.0, 0.0, 0.0};  ///< A_0..A_2
  double eta = 0.0;                        ///< composed value
};

/// Solves the reduced equation erfc(-eta0 sqrt(a/2))/2 = p and builds the
/// higher-order coefficients from the frame's f.
InversionExpansion invert_expansion(double a, double p, const EtaFrame& frame);

}  // namespace gamdist
