#pragma once

#include <complex>

#include "vkerr/params.hpp"

namespace vkerr {

using Complex = std::complex<double>;

/// Eigensystem of the strongly driven |0> <-> |2> transition plus the bare
/// probe level:  |+> = s|0> + c|2>,  |-> = s|2> - c|0>,  |1>.
struct DressedBasis {
  double c = 0.0;
  double s = 0.0;
  double omega_R = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double lambda_1 = 0.0;
};

/// Cavity response at the five dressed transition frequencies.
struct CavityResponse {
  Complex B0, B1, B2, B3, B4;
};

/// Cross couplings between the two atomic transitions, from free-space cross
/// damping and from the shared cavity mode.
struct InterferenceTerms {
  Complex x1, x2, x3, x4;
};

/// Purcell-modified transition rates and coherence dampings.
///
/// Gamma1..Gamma3 fold the dressed energy differences into the dampings:
///   Gamma1 = Gamma0 + i Omega_R
///   Gamma2 = Gamma_plus  - i (lambda_plus - omega21)
///   Gamma3 = Gamma_minus - i (lambda_plus - omega21)
/// Gamma_1plus is the full decay-plus-rotation rate of rho_{1+},
/// conj(Gamma_plus) - i (lambda_plus - lambda_1) = conj(Gamma2) - i Omega_R.
struct RateSet {
  double R_plus_minus = 0.0;
  double R_minus_plus = 0.0;
  double R_1_minus = 0.0;
  double R_1_plus = 0.0;
  Complex Gamma0, Gamma_minus, Gamma_plus;
  Complex Gamma1, Gamma2, Gamma3;
  Complex Gamma_1plus;
};

/// Everything the reduced equations of motion need for one parameter set.
struct CoefficientSet {
  DressedBasis basis;
  CavityResponse response;
  InterferenceTerms x;
  RateSet rates;
  double gamma12 = 0.0;
};

/// Throws Error(DegenerateDressing) when Omega_R = 0.
DressedBasis dress(const SystemParams& params);

CavityResponse cavity_response(const SystemParams& params, const DressedBasis& basis);

InterferenceTerms interference_terms(const SystemParams& params, const DressedBasis& basis,
                                     const CavityResponse& response);

RateSet rate_set(const SystemParams& params, const DressedBasis& basis,
                 const CavityResponse& response);

/// Validates the parameters and evaluates the full chain above.
CoefficientSet coefficients(const SystemParams& params);

}  // namespace vkerr
