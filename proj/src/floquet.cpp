#include "vkerr/floquet.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "vkerr/error.hpp"

namespace vkerr {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr double kRelativeSingularity = 1e-12;

[[noreturn]] void singular(int m, int n, const std::string& what) {
  const auto code = m == 0 ? ErrorCode::SingularSteadyState : ErrorCode::SingularKernel;
  throw Error(code, what + " vanishes at (m, n) = (" + std::to_string(m) + ", " +
                        std::to_string(n) + ")");
}

void check_denominator(Complex d, int m, int n, const char* what) {
  if (!(std::abs(d) > std::numeric_limits<double>::min()) || !std::isfinite(std::abs(d)))
    singular(m, n, what);
}

// det = a - b with a and b the two products; zero relative to |a| + |b|.
void check_determinant(Complex det, double scale, int m, int n, const char* what) {
  if (!(std::abs(det) > kRelativeSingularity * scale) || !std::isfinite(std::abs(det)))
    singular(m, n, what);
}

}  // namespace

std::string_view to_string(Element e) {
  switch (e) {
    case Element::MinusMinus: return "rho_mm";
    case Element::OneOne: return "rho_11";
    case Element::PlusPlus: return "rho_pp";
    case Element::MinusOne: return "rho_m1";
    case Element::OneMinus: return "rho_1m";
    case Element::OnePlus: return "rho_1p";
    case Element::PlusOne: return "rho_p1";
    case Element::MinusPlus: return "rho_mp";
    case Element::PlusMinus: return "rho_pm";
  }
  return "?";
}

bool is_population(Element e) {
  return e == Element::MinusMinus || e == Element::OneOne || e == Element::PlusPlus;
}

Element adjoint(Element e) {
  switch (e) {
    case Element::MinusOne: return Element::OneMinus;
    case Element::OneMinus: return Element::MinusOne;
    case Element::OnePlus: return Element::PlusOne;
    case Element::PlusOne: return Element::OnePlus;
    case Element::MinusPlus: return Element::PlusMinus;
    case Element::PlusMinus: return Element::MinusPlus;
    default: return e;
  }
}

bool is_reachable(int m, int n) {
  return m >= 0 && std::abs(n) <= m && (std::abs(n - m) % 2) == 0;
}

PopulationKernel population_kernel(const CoefficientSet& k, int n, double delta_p) {
  const Complex D = I * (static_cast<double>(n) * delta_p);
  const auto& r = k.rates;
  const auto& x = k.x;
  const double s2 = k.basis.s * k.basis.s;
  const Complex d3 = r.Gamma3 + D;
  const Complex d3c = std::conj(r.Gamma3) + D;

  PopulationKernel h;
  h.h1 = r.R_minus_plus + r.R_plus_minus + D + s2 * x.x1 * std::conj(x.x2) / d3 +
         s2 * std::conj(x.x1) * x.x2 / d3c;
  h.h2 = (r.R_plus_minus - r.R_1_minus) + s2 * x.x1 * x.x4 / d3 +
         s2 * std::conj(x.x1) * std::conj(x.x4) / d3c;
  h.h3 = r.R_1_plus + r.R_1_minus + D - s2 * x.x2 * x.x4 / d3 -
         s2 * std::conj(x.x2) * std::conj(x.x4) / d3c;
  h.h4 = s2 * std::norm(x.x2) / d3 + s2 * std::norm(x.x2) / d3c;
  return h;
}

HarmonicTable::HarmonicTable(CoefficientSet coeffs, double delta_p)
    : coeffs_(std::move(coeffs)), delta_p_(delta_p) {
  if (!std::isfinite(delta_p_))
    throw Error(ErrorCode::InvalidArgument, "delta_p must be finite");
}

Complex HarmonicTable::at(const HarmonicIndex& idx) {
  if (!is_reachable(idx.m, idx.n)) return {};
  if (const auto it = table_.find(idx); it != table_.end()) return it->second;

  switch (idx.element) {
    case Element::MinusMinus:
    case Element::OneOne:
    case Element::PlusPlus:
    case Element::MinusOne:
    case Element::OneMinus:
      solve_populations(idx.m, idx.n);
      break;
    case Element::OnePlus:
    case Element::MinusPlus:
      solve_plus_blocks(idx.m, idx.n);
      break;
    case Element::PlusOne:
    case Element::PlusMinus:
      solve_plus_blocks_conjugate(idx.m, idx.n);
      break;
  }
  return table_.at(idx);
}

Complex HarmonicTable::source(Element e, int m, int n) {
  return m < 1 ? Complex{} : at(e, m - 1, n);
}

// Populations and the probe-level coherences rho_{-1}, rho_{1-} at (m, n).
//
// With D = i n delta_p, d3 = Gamma3 + D and d3c = conj(Gamma3) + D:
//   d3  rho_-1 = S_-1 - s (x4 rho_11 + conj(x2) rho_--)
//   d3c rho_1- = S_1- - s (conj(x4) rho_11 + x2 rho_--)
// where S_-1, S_1- are the probe sources from order m-1. Substituting these
// into the population equations (rho_++ replaced through the trace) gives the
// H kernel with
//   U = P_-- + s x1 S_-1 / d3 + s conj(x1) S_1- / d3c   (+ R_{+-} at m = 0)
//   W = P_11 - s x2 S_-1 / d3 - s conj(x2) S_1- / d3c
void HarmonicTable::solve_populations(int m, int n) {
  const double c = coeffs_.basis.c;
  const double s = coeffs_.basis.s;
  const auto& x = coeffs_.x;
  const auto& r = coeffs_.rates;
  const Complex D = I * (static_cast<double>(n) * delta_p_);
  const Complex d3 = r.Gamma3 + D;
  const Complex d3c = std::conj(r.Gamma3) + D;
  check_denominator(d3, m, n, "Gamma3 + i n delta_p");
  check_denominator(d3c, m, n, "conj(Gamma3) + i n delta_p");

  using E = Element;
  Complex S_m1, S_1m, P_mm, P_11;
  if (m >= 1) {
    S_m1 = I * (c * (source(E::OneOne, m, n - 1) - source(E::MinusMinus, m, n - 1)) +
                s * source(E::MinusPlus, m, n - 1));
    S_1m = -I * (c * (source(E::OneOne, m, n + 1) - source(E::MinusMinus, m, n + 1)) +
                 s * source(E::PlusMinus, m, n + 1));
    P_mm = I * c * (source(E::OneMinus, m, n - 1) - source(E::MinusOne, m, n + 1));
    P_11 = I * (s * (source(E::OnePlus, m, n - 1) - source(E::PlusOne, m, n + 1)) -
                c * (source(E::OneMinus, m, n - 1) - source(E::MinusOne, m, n + 1)));
  }

  Complex U = P_mm + s * x.x1 * S_m1 / d3 + s * std::conj(x.x1) * S_1m / d3c;
  const Complex W = P_11 - s * x.x2 * S_m1 / d3 - s * std::conj(x.x2) * S_1m / d3c;
  if (m == 0) U += r.R_plus_minus;

  const PopulationKernel h = population_kernel(coeffs_, n, delta_p_);
  const Complex det = h.determinant();
  check_determinant(det, std::abs(h.h1 * h.h3) + std::abs(h.h2 * h.h4), m, n,
                    "population kernel determinant H1 H3 + H2 H4");

  const Complex rho_mm = (h.h3 * U - h.h2 * W) / det;
  const Complex rho_11 = (h.h1 * W + h.h4 * U) / det;
  const Complex rho_pp = (m == 0 ? 1.0 : 0.0) - rho_mm - rho_11;
  const Complex rho_m1 = (S_m1 - s * (x.x4 * rho_11 + std::conj(x.x2) * rho_mm)) / d3;
  const Complex rho_1m = (S_1m - s * (std::conj(x.x4) * rho_11 + x.x2 * rho_mm)) / d3c;

  table_[{E::MinusMinus, m, n}] = rho_mm;
  table_[{E::OneOne, m, n}] = rho_11;
  table_[{E::PlusPlus, m, n}] = rho_pp;
  table_[{E::MinusOne, m, n}] = rho_m1;
  table_[{E::OneMinus, m, n}] = rho_1m;
}

// rho_{1+} and rho_{-+} are coupled by the cavity (both rotate at about
// Omega_R when |1> and |-> are near degenerate):
//   (Ga + D) rho_1+ + x2 rho_-+          = Pa
//   s x3 rho_1+ + (conj(Gamma1) + D) rho_-+ = Qb
void HarmonicTable::solve_plus_blocks(int m, int n) {
  using E = Element;
  if (m == 0) {
    table_[{E::OnePlus, m, n}] = {};
    table_[{E::MinusPlus, m, n}] = {};
    return;
  }
  const double c = coeffs_.basis.c;
  const double s = coeffs_.basis.s;
  const auto& x = coeffs_.x;
  const Complex D = I * (static_cast<double>(n) * delta_p_);

  const Complex Pa = I * (s * (source(E::OneOne, m, n + 1) - source(E::PlusPlus, m, n + 1)) +
                          c * source(E::MinusPlus, m, n + 1));
  const Complex Qb = I * (c * source(E::OnePlus, m, n - 1) + s * source(E::MinusOne, m, n + 1));

  const Complex a = coeffs_.rates.Gamma_1plus + D;
  const Complex e = std::conj(coeffs_.rates.Gamma1) + D;
  const Complex det = a * e - s * x.x2 * x.x3;
  check_determinant(det, std::abs(a * e) + std::abs(s * x.x2 * x.x3), m, n,
                    "rho_1+/rho_-+ block determinant");

  table_[{E::OnePlus, m, n}] = (e * Pa - x.x2 * Qb) / det;
  table_[{E::MinusPlus, m, n}] = (a * Qb - s * x.x3 * Pa) / det;
}

// Hermitian partner of the block above, solved from its own equations:
//   (conj(Ga) + D) rho_+1 + conj(x2) rho_+-   = Pc
//   s conj(x3) rho_+1 + (Gamma1 + D) rho_+-   = Qd
void HarmonicTable::solve_plus_blocks_conjugate(int m, int n) {
  using E = Element;
  if (m == 0) {
    table_[{E::PlusOne, m, n}] = {};
    table_[{E::PlusMinus, m, n}] = {};
    return;
  }
  const double c = coeffs_.basis.c;
  const double s = coeffs_.basis.s;
  const auto& x = coeffs_.x;
  const Complex D = I * (static_cast<double>(n) * delta_p_);

  const Complex Pc = -I * (s * (source(E::OneOne, m, n - 1) - source(E::PlusPlus, m, n - 1)) +
                           c * source(E::PlusMinus, m, n - 1));
  const Complex Qd =
      -I * (c * source(E::PlusOne, m, n + 1) + s * source(E::OneMinus, m, n - 1));

  const Complex a = std::conj(coeffs_.rates.Gamma_1plus) + D;
  const Complex e = coeffs_.rates.Gamma1 + D;
  const Complex cross = s * std::conj(x.x2) * std::conj(x.x3);
  const Complex det = a * e - cross;
  check_determinant(det, std::abs(a * e) + std::abs(cross), m, n,
                    "rho_+1/rho_+- block determinant");

  table_[{E::PlusOne, m, n}] = (e * Pc - std::conj(x.x2) * Qd) / det;
  table_[{E::PlusMinus, m, n}] = (a * Qd - s * std::conj(x.x3) * Pc) / det;
}

SteadyState0 zeroth_order_steady_state(const CoefficientSet& coeffs) {
  HarmonicTable table(coeffs, 0.0);
  SteadyState0 st;
  st.rho_11 = table.at(Element::OneOne, 0, 0).real();
  st.rho_mm = table.at(Element::MinusMinus, 0, 0).real();
  st.rho_pp = table.at(Element::PlusPlus, 0, 0).real();
  st.rho_m1 = table.at(Element::MinusOne, 0, 0);
  return st;
}

ProbeCoherence probe_coherence(int order, HarmonicTable& table) {
  if (order != 1 && order != 3)
    throw Error(ErrorCode::InvalidArgument, "probe order must be 1 or 3");
  return {table.at(Element::OnePlus, order, -1), table.at(Element::OneMinus, order, -1)};
}

ProbeCoherence probe_coherence(int order, double delta_p, const CoefficientSet& coeffs) {
  HarmonicTable table(coeffs, delta_p);
  return probe_coherence(order, table);
}

}  // namespace vkerr
