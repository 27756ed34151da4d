#pragma once

#include <map>
#include <numbers>
#include <random>
#include <tuple>

#include <Eigen/Dense>

#include "vkerr/dressed.hpp"
#include "vkerr/floquet.hpp"

namespace vkerr::testing {

/// Reduced equations as dy/dt = A0 y + b0 + Op [e (Ap y + ap) + conj(e) (Am y + am)],
/// e = exp(i delta_p t), y = (rho_--, rho_11, rho_-1, rho_1-, rho_1+, rho_+1,
/// rho_-+, rho_+-) with rho_++ = 1 - rho_-- - rho_11. Filled entry by entry
/// so it shares no code with the library.
struct LinearModel {
  using Mat = Eigen::Matrix<Complex, 8, 8>;
  using Vec = Eigen::Matrix<Complex, 8, 1>;
  Mat A0 = Mat::Zero(), Ap = Mat::Zero(), Am = Mat::Zero();
  Vec b0 = Vec::Zero(), ap = Vec::Zero(), am = Vec::Zero();
};

inline LinearModel linear_model(const CoefficientSet& k) {
  const Complex i{0.0, 1.0};
  const double c = k.basis.c, s = k.basis.s;
  const auto& x = k.x;
  const auto& r = k.rates;
  const auto cj = [](Complex z) { return std::conj(z); };
  LinearModel m;
  auto& A = m.A0;
  A(0, 0) = -r.R_minus_plus - r.R_plus_minus;
  A(0, 1) = r.R_1_minus - r.R_plus_minus;
  A(0, 2) = s * x.x1;
  A(0, 3) = s * cj(x.x1);
  m.b0(0) = r.R_plus_minus;
  A(1, 1) = -(r.R_1_plus + r.R_1_minus);
  A(1, 2) = -s * x.x2;
  A(1, 3) = -s * cj(x.x2);
  A(2, 2) = -r.Gamma3;
  A(2, 1) = -s * x.x4;
  A(2, 0) = -s * cj(x.x2);
  A(3, 3) = -cj(r.Gamma3);
  A(3, 1) = -s * cj(x.x4);
  A(3, 0) = -s * x.x2;
  A(4, 4) = -r.Gamma_1plus;
  A(4, 6) = -x.x2;
  A(5, 5) = -cj(r.Gamma_1plus);
  A(5, 7) = -cj(x.x2);
  A(6, 6) = -cj(r.Gamma1);
  A(6, 4) = -s * x.x3;
  A(7, 7) = -r.Gamma1;
  A(7, 5) = -s * cj(x.x3);

  auto& P = m.Ap;
  auto& M = m.Am;
  P(0, 3) = i * c;
  M(0, 2) = -i * c;
  P(1, 4) = i * s;
  M(1, 5) = -i * s;
  P(1, 3) = -i * c;
  M(1, 2) = i * c;
  P(2, 6) = i * s;
  P(2, 1) = i * c;
  P(2, 0) = -i * c;
  M(3, 7) = -i * s;
  M(3, 1) = -i * c;
  M(3, 0) = i * c;
  // rho_11 - rho_++ = 2 rho_11 + rho_-- - 1
  M(4, 1) = 2.0 * i * s;
  M(4, 0) = i * s;
  m.am(4) = -i * s;
  M(4, 6) = i * c;
  P(5, 1) = -2.0 * i * s;
  P(5, 0) = -i * s;
  m.ap(5) = i * s;
  P(5, 7) = -i * c;
  P(6, 4) = i * c;
  M(6, 2) = i * s;
  M(7, 5) = -i * c;
  P(7, 3) = -i * s;
  return m;
}

/// Dense order-by-order harmonic balance: (i n dp - A0) y_m^n =
/// Ap y_{m-1}^{n-1} + Am y_{m-1}^{n+1} (+ ap, am at m = 1).
class DenseFloquet {
 public:
  DenseFloquet(const CoefficientSet& k, double delta_p, int max_order = 3) {
    const LinearModel lm = linear_model(k);
    using Vec = LinearModel::Vec;
    y_[{0, 0}] = lm.A0.partialPivLu().solve(-lm.b0);
    for (int m = 1; m <= max_order; ++m) {
      for (int n = -m; n <= m; ++n) {
        Vec rhs = Vec::Zero();
        if (auto it = y_.find({m - 1, n - 1}); it != y_.end()) rhs += lm.Ap * it->second;
        if (auto it = y_.find({m - 1, n + 1}); it != y_.end()) rhs += lm.Am * it->second;
        if (m == 1 && n == 1) rhs += lm.ap;
        if (m == 1 && n == -1) rhs += lm.am;
        const LinearModel::Mat lhs =
            Complex(0.0, n * delta_p) * LinearModel::Mat::Identity() - lm.A0;
        y_[{m, n}] = lhs.partialPivLu().solve(rhs);
      }
    }
  }

  Complex at(Element e, int m, int n) const {
    const auto it = y_.find({m, n});
    if (it == y_.end()) return {};
    const auto& y = it->second;
    switch (e) {
      case Element::MinusMinus: return y(0);
      case Element::OneOne: return y(1);
      case Element::PlusPlus: return (m == 0 && n == 0 ? 1.0 : 0.0) - y(0) - y(1);
      case Element::MinusOne: return y(2);
      case Element::OneMinus: return y(3);
      case Element::OnePlus: return y(4);
      case Element::PlusOne: return y(5);
      case Element::MinusPlus: return y(6);
      case Element::PlusMinus: return y(7);
    }
    return {};
  }

 private:
  std::map<std::pair<int, int>, LinearModel::Vec> y_;
};

/// Parameters of the reference steady-state table.
inline SystemParams table_params() { return SystemParams{}; }

/// Random valid parameter draw over a broad physical range.
inline SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto range = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
  SystemParams p;
  p.gamma1 = range(0.01, 1.0);
  p.gamma2 = range(0.01, 1.0);
  p.theta = range(0.0, std::numbers::pi);
  p.g1 = range(0.0, 20.0);
  p.g2 = range(0.0, 20.0);
  p.kappa = range(10.0, 300.0);
  p.omega21 = range(100.0, 300.0);
  p.omega_L_rabi = range(10.0, 300.0);
  p.delta = range(-100.0, 100.0);
  p.delta_c = range(-500.0, 500.0);
  return p;
}

}  // namespace vkerr::testing
