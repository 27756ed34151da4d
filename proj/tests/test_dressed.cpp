#include <cmath>
#include <functional>
#include <random>

#include <doctest.h>

#include "support.hpp"
#include "vkerr/dressed.hpp"
#include "vkerr/error.hpp"

using namespace vkerr;
using doctest::Approx;

TEST_CASE("dressed basis at resonance and off resonance") {
  SystemParams p;
  DressedBasis b = dress(p);
  CHECK(b.c * b.c == Approx(0.5));
  CHECK(b.s * b.s == Approx(0.5));
  CHECK(b.omega_R == Approx(400.0));
  CHECK(b.lambda_plus == Approx(200.0));
  CHECK(b.lambda_minus == Approx(-200.0));
  CHECK(b.lambda_1 == Approx(-200.0));

  p.delta = 300.0;
  b = dress(p);
  CHECK(b.omega_R == Approx(500.0));
  CHECK(b.c * b.c == Approx(0.8));
  CHECK(b.s * b.s == Approx(0.2));

  p.delta = 1e9;
  b = dress(p);
  CHECK(b.c * b.c == Approx(1.0));
  CHECK(b.s * b.s < 1e-9);

  p.delta = 0.0;
  p.omega_L_rabi = 0.0;
  CHECK_THROWS_AS(dress(p), Error);
}

TEST_CASE("dressed basis invariants on random draws") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const SystemParams p = testing::random_params(rng);
    const DressedBasis b = dress(p);
    CHECK(b.c * b.c + b.s * b.s == Approx(1.0).epsilon(1e-15));
    CHECK(b.c >= 0.0);
    CHECK(b.s >= 0.0);
    CHECK(b.lambda_plus - b.lambda_minus == Approx(b.omega_R).epsilon(1e-13));
  }
}

TEST_CASE("cavity response at the table parameters") {
  const SystemParams p;
  const CavityResponse r = cavity_response(p, dress(p));
  CHECK(r.B0.real() == Approx(0.1).epsilon(1e-14));
  CHECK(r.B0.imag() == Approx(-0.2).epsilon(1e-14));
  // lambda_+ = omega21 makes the exact B4, B3 coincide with B0, B1.
  CHECK(r.B4 == r.B0);
  CHECK(r.B3 == r.B1);

  SystemParams q;
  q.delta_c = 0.0;
  const Complex b0 = cavity_response(q, dress(q)).B0;
  CHECK(b0.real() == Approx(0.5).epsilon(1e-15));
  CHECK(b0.imag() == 0.0);

  q.delta_c = 1e9;
  const CavityResponse far = cavity_response(q, dress(q));
  for (Complex z : {far.B0, far.B1, far.B2, far.B3, far.B4}) CHECK(std::abs(z) < 1e-6);
}

TEST_CASE("near-degenerate approximation flag") {
  SystemParams p;
  p.omega21 = 250.0;
  p.near_degenerate_approx = true;
  const CavityResponse r = cavity_response(p, dress(p));
  CHECK(r.B4 == r.B0);
  CHECK(r.B3 == r.B1);
  p.near_degenerate_approx = false;
  CHECK(cavity_response(p, dress(p)).B4 != r.B0);
}

TEST_CASE("interference terms") {
  SystemParams p;
  p.g1 = 0.0;
  const CoefficientSet free = coefficients(p);
  for (Complex x : {free.x.x1, free.x.x2, free.x.x3, free.x.x4}) CHECK(x == Complex{});

  const SystemParams t;
  const CoefficientSet k = coefficients(t);
  const Complex B1 = 50.0 / Complex(100.0, 600.0);
  const Complex x2 = 0.75 * (Complex(0.1, -0.2) + B1);
  CHECK(std::abs(k.x.x2 - x2) < 1e-14);
  // c^2 = s^2 leaves only the cavity part of x1.
  CHECK(std::abs(k.x.x1 - 0.75 * (k.response.B0 - std::conj(k.response.B3))) < 1e-14);

  SystemParams sgc;
  sgc.g1 = 0.0;
  sgc.theta = 0.4;
  const CoefficientSet s = coefficients(sgc);
  CHECK(std::abs(s.x.x1) < 1e-15);
  CHECK(s.x.x2 == Complex(s.gamma12, 0.0));
  CHECK(s.x.x4 == Complex(s.gamma12, 0.0));
}

TEST_CASE("rates reduce to free space without coupling") {
  SystemParams p;
  p.g1 = p.g2 = 0.0;
  p.gamma1 = 0.3;
  p.gamma2 = 0.2;
  const RateSet r = coefficients(p).rates;
  CHECK(r.R_plus_minus == Approx(0.1));
  CHECK(r.R_minus_plus == Approx(0.1));
  CHECK(r.R_1_minus == Approx(0.3));
  CHECK(r.R_1_plus == Approx(0.3));
  CHECK(r.Gamma0.real() == Approx(0.3));
  CHECK(r.Gamma0.imag() == 0.0);
  CHECK(r.Gamma1 == r.Gamma0 + Complex(0.0, 400.0));

  // The decoupled cavity gives the same rates.
  SystemParams far;
  far.gamma1 = 0.3;
  far.gamma2 = 0.2;
  far.delta_c = 1e12;
  const RateSet f = coefficients(far).rates;
  CHECK(f.R_plus_minus == Approx(0.1).epsilon(1e-9));
  CHECK(f.R_1_minus == Approx(0.3).epsilon(1e-9));
  CHECK(std::abs(f.Gamma0 - r.Gamma0) < 1e-9);
}

TEST_CASE("rates stay physical on random draws") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const SystemParams p = testing::random_params(rng);
    const CoefficientSet k = coefficients(p);
    const auto& r = k.rates;
    CHECK(r.R_plus_minus >= 0.0);
    CHECK(r.R_minus_plus >= 0.0);
    CHECK(r.R_1_minus >= 0.0);
    CHECK(r.R_1_plus >= 0.0);
    CHECK(r.Gamma0.real() > 0.0);
    CHECK(r.Gamma_plus.real() > 0.0);
    CHECK(r.Gamma_minus.real() > 0.0);

    const double c2 = k.basis.c * k.basis.c, s2 = k.basis.s * k.basis.s;
    const auto& B = k.response;
    CHECK(std::abs(B.B0) <= c2 + 1e-15);
    CHECK(std::abs(B.B2) <= c2 + 1e-15);
    CHECK(std::abs(B.B4) <= c2 + 1e-15);
    CHECK(std::abs(B.B1) <= s2 + 1e-15);
    CHECK(std::abs(B.B3) <= s2 + 1e-15);
    for (Complex z : {B.B0, B.B1, B.B2, B.B3, B.B4}) CHECK(z.real() >= 0.0);
  }
}

TEST_CASE("cavity response maxima sit at the dressed resonances") {
  std::mt19937_64 rng(3);
  const double step = 0.25;
  for (int draw = 0; draw < 20; ++draw) {
    SystemParams p = testing::random_params(rng);
    const DressedBasis b = dress(p);
    const std::pair<std::function<double(const CavityResponse&)>, double> cases[] = {
        {[](const CavityResponse& r) { return std::abs(r.B0); }, 0.0},
        {[](const CavityResponse& r) { return std::abs(r.B1); }, -b.omega_R},
        {[](const CavityResponse& r) { return std::abs(r.B2); }, b.omega_R},
        {[](const CavityResponse& r) { return std::abs(r.B3); }, b.lambda_minus - p.omega21},
        {[](const CavityResponse& r) { return std::abs(r.B4); }, b.lambda_plus - p.omega21},
    };
    for (const auto& [mag, expected] : cases) {
      double best = -1.0, at = 0.0;
      for (double dc = expected - 50.0; dc <= expected + 50.0; dc += step) {
        p.delta_c = dc;
        const double v = mag(cavity_response(p, b));
        if (v > best) {
          best = v;
          at = dc;
        }
      }
      CHECK(std::abs(at - expected) <= 0.5 * step + 1e-9);
    }
  }
}
