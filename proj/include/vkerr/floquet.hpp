#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string_view>

#include "vkerr/dressed.hpp"

namespace vkerr {

/// Density-matrix elements of the reduced (cavity-eliminated) atom in the
/// dressed basis. MinusOne is <-|rho|1>, OnePlus is <1|rho|+>, and so on.
enum class Element : std::uint8_t {
  MinusMinus,
  OneOne,
  PlusPlus,
  MinusOne,
  OneMinus,
  OnePlus,
  PlusOne,
  MinusPlus,
  PlusMinus,
};

inline constexpr Element kAllElements[] = {
    Element::MinusMinus, Element::OneOne,  Element::PlusPlus,
    Element::MinusOne,   Element::OneMinus, Element::OnePlus,
    Element::PlusOne,    Element::MinusPlus, Element::PlusMinus};

std::string_view to_string(Element e);
bool is_population(Element e);
/// rho_jk -> rho_kj.
Element adjoint(Element e);

/// Coefficient of Omega_p^m exp(i n delta_p t) in the double expansion of one
/// element.
struct HarmonicIndex {
  Element element = Element::MinusMinus;
  int m = 0;
  int n = 0;

  auto operator<=>(const HarmonicIndex&) const = default;
};

/// True for the (m, n) pairs the probe recursion can populate: |n| <= m and
/// n = m (mod 2).
bool is_reachable(int m, int n);

/// Probe-free stationary state in the dressed basis.
struct SteadyState0 {
  double rho_11 = 0.0;
  double rho_mm = 0.0;
  double rho_pp = 0.0;
  Complex rho_m1;
};

/// Solves the probe-free stationary populations and rho_{-1}. The coherence
/// is eliminated through its own stationary equation and rho_{++} through the
/// trace, which leaves a 2x2 system with the constant source R_{+-}.
SteadyState0 zeroth_order_steady_state(const CoefficientSet& coeffs);

/// 2x2 population kernel at harmonic n after eliminating rho_{-1}, rho_{1-}:
///   H1 rho_-- + H2 rho_11 = U,   -H4 rho_-- + H3 rho_11 = W.
struct PopulationKernel {
  Complex h1, h2, h3, h4;

  Complex determinant() const { return h1 * h3 + h2 * h4; }
};

PopulationKernel population_kernel(const CoefficientSet& coeffs, int n, double delta_p);

/// Memoized harmonics for one (coefficients, delta_p) evaluation.
///
/// Entries are created top-down on request. Each one is a closed-form
/// expression in lower-order entries: the four coherence blocks use order
/// m-1 sources, the populations use the H kernel with U, W built from order
/// m-1, and rho_{-1}, rho_{1-} additionally use the populations of the same
/// order. Throws Error(SingularKernel) when a denominator vanishes.
class HarmonicTable {
 public:
  HarmonicTable(CoefficientSet coeffs, double delta_p);

  Complex at(const HarmonicIndex& idx);
  Complex at(Element e, int m, int n) { return at(HarmonicIndex{e, m, n}); }

  const CoefficientSet& coefficients() const { return coeffs_; }
  double delta_p() const { return delta_p_; }
  const std::map<HarmonicIndex, Complex>& entries() const { return table_; }

 private:
  // Lookup of an order-(m-1) source; out-of-range orders are zero.
  Complex source(Element e, int m, int n);
  void solve_populations(int m, int n);
  void solve_plus_blocks(int m, int n);
  void solve_plus_blocks_conjugate(int m, int n);

  CoefficientSet coeffs_;
  double delta_p_;
  std::map<HarmonicIndex, Complex> table_;
};

/// Probe-transition harmonics (rho_{1+})_k^{-1} and (rho_{1-})_k^{-1}.
struct ProbeCoherence {
  Complex one_plus;
  Complex one_minus;
};

/// order must be 1 or 3.
ProbeCoherence probe_coherence(int order, double delta_p, const CoefficientSet& coeffs);
ProbeCoherence probe_coherence(int order, HarmonicTable& table);

}  // namespace vkerr
