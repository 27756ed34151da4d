#include "vkerr/dressed.hpp"

#include <algorithm>
#include <cmath>

#include "vkerr/error.hpp"

namespace vkerr {

namespace {

constexpr Complex I{0.0, 1.0};

// kappa / (kappa + i detuning); the B coefficients are weight * lorentzian.
Complex lorentzian(double kappa, double detuning) {
  return kappa / Complex(kappa, detuning);
}

}  // namespace

DressedBasis dress(const SystemParams& p) {
  const double omega_R = std::hypot(p.delta, 2.0 * p.omega_L_rabi);
  if (!(omega_R > 0.0)) {
    throw Error(ErrorCode::DegenerateDressing,
                "Omega_R = 0: no drive and no detuning, dressed basis undefined");
  }
  // c^2 = 1/2 + delta / (2 Omega_R), written to stay accurate when one of the
  // two weights is tiny.
  double c2 = 0.5 + p.delta / (2.0 * omega_R);
  double s2 = 0.5 - p.delta / (2.0 * omega_R);
  c2 = std::clamp(c2, 0.0, 1.0);
  s2 = std::clamp(s2, 0.0, 1.0);

  DressedBasis b;
  b.c = std::sqrt(c2);
  b.s = std::sqrt(s2);
  b.omega_R = omega_R;
  b.lambda_plus = c2 * omega_R;
  b.lambda_minus = -s2 * omega_R;
  b.lambda_1 = -(p.omega21 - p.delta);
  return b;
}

CavityResponse cavity_response(const SystemParams& p, const DressedBasis& b) {
  const double c2 = b.c * b.c;
  const double s2 = b.s * b.s;
  const double k = p.kappa;
  CavityResponse r;
  r.B0 = c2 * lorentzian(k, p.delta_c);
  r.B1 = s2 * lorentzian(k, p.delta_c + b.omega_R);
  r.B2 = c2 * lorentzian(k, p.delta_c - b.omega_R);
  if (p.near_degenerate_approx) {
    r.B3 = r.B1;
    r.B4 = r.B0;
  } else {
    r.B3 = s2 * lorentzian(k, p.delta_c + p.omega21 - b.lambda_minus);
    r.B4 = c2 * lorentzian(k, p.delta_c + p.omega21 - b.lambda_plus);
  }
  return r;
}

InterferenceTerms interference_terms(const SystemParams& p, const DressedBasis& b,
                                     const CavityResponse& r) {
  const double g12 = effective_gamma12(p);
  const double cav = p.g1 * p.g2 / p.kappa;
  const double c2 = b.c * b.c;
  const double s2 = b.s * b.s;
  InterferenceTerms x;
  x.x1 = (c2 - s2) * g12 + cav * (r.B0 - std::conj(r.B3));
  x.x2 = g12 + cav * (r.B0 + r.B1);
  x.x3 = (2.0 * b.c * b.s + 1.0) * g12 + cav * (std::conj(r.B0) + 2.0 * r.B4 + r.B3);
  x.x4 = g12 + cav * (r.B3 + r.B4);
  return x;
}

RateSet rate_set(const SystemParams& p, const DressedBasis& b, const CavityResponse& r) {
  const double c2 = b.c * b.c;
  const double s2 = b.s * b.s;
  const double k = p.kappa;
  const double g1sq = p.g1 * p.g1;
  const double g2sq = p.g2 * p.g2;

  // R_{1-} = 2c^2 (gamma1 + g1^2 |B4|^2 / (c^4 kappa)) and likewise R_{1+};
  // |B4|/c^2 and |B3|/s^2 are bare lorentzians, which keeps c -> 0 or s -> 0
  // free of 0/0.
  const double L3 = std::norm(p.near_degenerate_approx
                                  ? lorentzian(k, p.delta_c + b.omega_R)
                                  : lorentzian(k, p.delta_c + p.omega21 - b.lambda_minus));
  const double L4 = std::norm(p.near_degenerate_approx
                                  ? lorentzian(k, p.delta_c)
                                  : lorentzian(k, p.delta_c + p.omega21 - b.lambda_plus));

  RateSet s;
  s.R_plus_minus = 2.0 * c2 * c2 * p.gamma2 + 2.0 * g2sq * std::norm(r.B2) / k;
  s.R_minus_plus = 2.0 * s2 * s2 * p.gamma2 + 2.0 * g2sq * std::norm(r.B1) / k;
  s.R_1_minus = 2.0 * c2 * p.gamma1 + 2.0 * c2 * g1sq * L4 / k;
  s.R_1_plus = 2.0 * s2 * p.gamma1 + 2.0 * s2 * g1sq * L3 / k;

  s.Gamma0 = p.gamma2 * (1.0 + 2.0 * c2 * s2) +
             g2sq / k * (s2 * (2.0 * r.B0 + 2.0 * std::conj(r.B0) + r.B1) + c2 * r.B2);
  const Complex probe_part = p.gamma1 + g1sq / k * (std::conj(r.B3) + std::conj(r.B4));
  s.Gamma_minus = probe_part + s2 * (p.gamma2 + g2sq / k * (r.B0 + r.B1));
  s.Gamma_plus = probe_part + c2 * (p.gamma2 + g2sq / k * r.B2) + s2 * g2sq / k * r.B0;

  s.Gamma1 = s.Gamma0 + I * b.omega_R;
  s.Gamma2 = s.Gamma_plus - I * (b.lambda_plus - p.omega21);
  s.Gamma3 = s.Gamma_minus - I * (b.lambda_plus - p.omega21);
  s.Gamma_1plus = std::conj(s.Gamma_plus) - I * (b.lambda_plus - b.lambda_1);
  return s;
}

CoefficientSet coefficients(const SystemParams& p) {
  validate(p);
  CoefficientSet set;
  set.basis = dress(p);
  set.response = cavity_response(p, set.basis);
  set.x = interference_terms(p, set.basis, set.response);
  set.rates = rate_set(p, set.basis, set.response);
  set.gamma12 = effective_gamma12(p);
  return set;
}

}  // namespace vkerr
