#pragma once

#include <string>

namespace gamdist {

/// Parameterization selector: plain gamma arguments or chi-square
/// arguments (degrees of freedom / noncentrality / abscissa), which are
/// mapped onto the gamma form before any computation.
enum class DistributionKind {
  gamma_form,
  chi_square_form,
};

/// Which variable a noncentral inversion solves for.
enum class InversionTarget {
  noncentrality_x,  ///< solve Q_mu(x, y) = q for x, fixed y
  quantile_y,       ///< solve P_mu(x, y) = p for y, fixed x
};

enum class StatusCode {
  ok,
  overflow_underflow,
  out_of_range,
  max_iterations,
  infeasible,
  subcomputation_failure,
};

struct ComputationStatus {
  StatusCode code = StatusCode::ok;
  std::string detail;

  bool ok() const { return code == StatusCode::ok; }
};

/// Lower/upper tail pair with p + q = 1.
struct ProbabilityPair {
  double p = 0.0;
  double q = 1.0;
};

struct CdfResult {
  ProbabilityPair prob;
  ComputationStatus status;
};

struct InversionResult {
  double value = 0.0;
  ComputationStatus status;
};

// Per-routine integer status codes (stable CLI contract).

inline int cdf_central_ierr(StatusCode c) {
  switch (c) {
    case StatusCode::ok: return 0;
    case StatusCode::overflow_underflow: return 1;
    default: return 2;
  }
}

inline int inv_central_ierr(StatusCode c) {
  switch (c) {
    case StatusCode::ok: return 0;
    case StatusCode::overflow_underflow: return 1;
    case StatusCode::max_iterations: return 2;
    default: return 3;
  }
}

inline int cdf_noncentral_ierr(StatusCode c) {
  switch (c) {
    case StatusCode::ok: return 0;
    case StatusCode::overflow_underflow: return 1;
    default: return 2;
  }
}

inline int inv_noncentral_ierr(StatusCode c) {
  switch (c) {
    case StatusCode::ok: return 0;
    case StatusCode::infeasible: return 1;
    case StatusCode::subcomputation_failure: return 2;
    case StatusCode::max_iterations: return 3;
    default: return 4;
  }
}

}  // namespace gamdist
