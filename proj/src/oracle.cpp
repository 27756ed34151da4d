#include "vkerr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/KroneckerProduct>

#include "vkerr/error.hpp"

namespace vkerr {

namespace {

using Eigen::MatrixXcd;
constexpr Complex I{0.0, 1.0};

MatrixXcd projector(int l, int k) {
  MatrixXcd m = MatrixXcd::Zero(3, 3);
  m(l, k) = 1.0;
  return m;
}

// rate * (2 X rho Y - Z rho - rho Z) as a superoperator.
MatrixXcd dissipator(double rate, const MatrixXcd& X, const MatrixXcd& Y, const MatrixXcd& Z) {
  const auto id = MatrixXcd::Identity(X.rows(), X.cols());
  return rate * (2.0 * MatrixXcd(Eigen::kroneckerProduct(Y.transpose(), X)) -
                 MatrixXcd(Eigen::kroneckerProduct(id, Z)) -
                 MatrixXcd(Eigen::kroneckerProduct(Z.transpose(), id)));
}

struct FullSolve {
  MatrixXcd rho;  // full atom + cavity state
  MatrixXcd atom;  // 3x3 reduced state
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  double mean_photon_number = 0.0;
};

FullSolve solve_full(const SystemParams& params, int n_max) {
  const MatrixXcd L = liouvillian(params, n_max);
  const Eigen::Index dim = 3 * (n_max + 1);

  Eigen::BDCSVD<MatrixXcd> svd(L, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();  // descending
  const Eigen::Index last = sv.size() - 1;
  const double scale = sv(0);
  if (!(sv(last) <= 1e-9 * scale) || !(sv(last - 1) > 1e-9 * scale)) {
    throw Error(ErrorCode::DegenerateNullSpace,
                "Liouvillian null space is not one-dimensional (smallest singular values " +
                    std::to_string(sv(last)) + ", " + std::to_string(sv(last - 1)) + ")");
  }

  FullSolve out;
  out.rho = Eigen::Map<const MatrixXcd>(svd.matrixV().col(last).data(), dim, dim);
  out.rho /= out.rho.trace();
  out.hermiticity_error = (out.rho - out.rho.adjoint()).cwiseAbs().maxCoeff();
  const MatrixXcd herm = 0.5 * (out.rho + out.rho.adjoint());
  out.min_eigenvalue = Eigen::SelfAdjointEigenSolver<MatrixXcd>(herm, Eigen::EigenvaluesOnly)
                           .eigenvalues()
                           .minCoeff();
  if (out.hermiticity_error > 1e-9 || out.min_eigenvalue < -1e-9) {
    throw Error(ErrorCode::DegenerateNullSpace,
                "Liouvillian null vector is not a valid density matrix");
  }

  const int nc = n_max + 1;
  out.atom = MatrixXcd::Zero(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int k = 0; k < nc; ++k) out.atom(a, b) += out.rho(a * nc + k, b * nc + k);
  for (int a = 0; a < 3; ++a)
    for (int k = 0; k < nc; ++k) out.mean_photon_number += k * out.rho(a * nc + k, a * nc + k).real();
  return out;
}

// Mixing amplitudes from the drive block H = [[0, W], [W, delta]] on {|0>, |2>}.
// The upper eigenvector is (s, c); both components are non-negative.
std::pair<double, double> drive_mixing(const SystemParams& params) {
  Eigen::Matrix2d h;
  h << 0.0, params.omega_L_rabi, params.omega_L_rabi, params.delta;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(h);
  const Eigen::Vector2d upper = es.eigenvectors().col(1);
  return {std::abs(upper(1)), std::abs(upper(0))};
}

SteadyState0 to_dressed(const MatrixXcd& atom, double c, double s) {
  Eigen::Vector3cd plus(s, 0.0, c), minus(-c, 0.0, s), one(0.0, 1.0, 0.0);
  const auto element = [&](const Eigen::Vector3cd& u, const Eigen::Vector3cd& v) {
    return u.dot(atom * v);  // conjugates u
  };
  SteadyState0 st;
  st.rho_11 = element(one, one).real();
  st.rho_pp = element(plus, plus).real();
  st.rho_mm = element(minus, minus).real();
  st.rho_m1 = element(minus, one);
  return st;
}

double state_distance(const SteadyState0& a, const SteadyState0& b) {
  return std::max({std::abs(a.rho_11 - b.rho_11), std::abs(a.rho_pp - b.rho_pp),
                   std::abs(a.rho_mm - b.rho_mm), std::abs(a.rho_m1 - b.rho_m1)});
}

// Reduced dynamics. State layout: 8 complex elements in kAllElements order
// without rho_++ (closed by the trace), stored as interleaved re/im.
using State = std::array<double, 16>;
enum Slot { MM, E11, M1, E1M, E1P, P1, MP, PM };

Complex get(const State& y, int k) { return {y[2 * k], y[2 * k + 1]}; }
void put(State& y, int k, Complex v) {
  y[2 * k] = v.real();
  y[2 * k + 1] = v.imag();
}

struct ReducedSystem {
  CoefficientSet k;
  double omega_p;
  double delta_p;

  void operator()(const State& y, State& dy, double t) const {
    const double c = k.basis.c;
    const double s = k.basis.s;
    const auto& x = k.x;
    const auto& r = k.rates;
    const Complex e = std::polar(1.0, delta_p * t);
    const Complex ec = std::conj(e);
    const Complex iw = I * omega_p;

    const Complex mm = get(y, MM), p11 = get(y, E11), m1 = get(y, M1), p1m = get(y, E1M);
    const Complex p1p = get(y, E1P), pp1 = get(y, P1), mp = get(y, MP), pm = get(y, PM);
    const Complex pp = 1.0 - mm - p11;
    const Complex Ga = r.Gamma_1plus;

    put(dy, MM,
        -r.R_minus_plus * mm + r.R_plus_minus * pp + r.R_1_minus * p11 +
            s * (x.x1 * m1 + std::conj(x.x1) * p1m) + iw * c * (e * p1m - ec * m1));
    put(dy, E11,
        -(r.R_1_plus + r.R_1_minus) * p11 - s * (x.x2 * m1 + std::conj(x.x2) * p1m) +
            iw * (s * (e * p1p - ec * pp1) - c * (e * p1m - ec * m1)));
    put(dy, M1,
        -r.Gamma3 * m1 - s * (x.x4 * p11 + std::conj(x.x2) * mm) +
            iw * e * (s * mp + c * (p11 - mm)));
    put(dy, E1M,
        -std::conj(r.Gamma3) * p1m - s * (std::conj(x.x4) * p11 + x.x2 * mm) -
            iw * ec * (s * pm + c * (p11 - mm)));
    put(dy, E1P, -Ga * p1p - x.x2 * mp + iw * ec * (s * (p11 - pp) + c * mp));
    put(dy, P1, -std::conj(Ga) * pp1 - std::conj(x.x2) * pm - iw * e * (s * (p11 - pp) + c * pm));
    put(dy, MP, -std::conj(r.Gamma1) * mp - s * x.x3 * p1p + iw * (c * p1p * e + s * m1 * ec));
    put(dy, PM,
        -r.Gamma1 * pm - s * std::conj(x.x3) * pp1 - iw * (c * pp1 * ec + s * p1m * e));
  }
};

constexpr int slot_of(Element e) {
  switch (e) {
    case Element::MinusMinus: return MM;
    case Element::OneOne: return E11;
    case Element::MinusOne: return M1;
    case Element::OneMinus: return E1M;
    case Element::OnePlus: return E1P;
    case Element::PlusOne: return P1;
    case Element::MinusPlus: return MP;
    case Element::PlusMinus: return PM;
    case Element::PlusPlus: return -1;
  }
  return -1;
}

Complex element_value(const State& y, Element e) {
  if (e == Element::PlusPlus) return 1.0 - get(y, MM) - get(y, E11);
  return get(y, slot_of(e));
}

double max_abs_diff(const State& a, const State& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); i += 2) d = std::max(d, std::hypot(a[i] - b[i], a[i + 1] - b[i + 1]));
  return d;
}

double hermiticity_error(const State& y) {
  double err = std::max(std::abs(get(y, MM).imag()), std::abs(get(y, E11).imag()));
  err = std::max(err, std::abs(get(y, M1) - std::conj(get(y, E1M))));
  err = std::max(err, std::abs(get(y, E1P) - std::conj(get(y, P1))));
  err = std::max(err, std::abs(get(y, MP) - std::conj(get(y, PM))));
  return err;
}

}  // namespace

MatrixXcd liouvillian(const SystemParams& params, int n_max) {
  validate(params);
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "Fock cutoff n_max must be >= 1");
  const int nc = n_max + 1;

  MatrixXcd a = MatrixXcd::Zero(nc, nc);
  for (int n = 1; n < nc; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const MatrixXcd ad = a.adjoint();
  const MatrixXcd ic = MatrixXcd::Identity(nc, nc);
  const MatrixXcd ia = MatrixXcd::Identity(3, 3);
  const auto kron = [](const MatrixXcd& A, const MatrixXcd& B) {
    return MatrixXcd(Eigen::kroneckerProduct(A, B));
  };
  const auto atom = [&](const MatrixXcd& A) { return kron(A, ic); };

  // Drive frame: |2> detuned by delta, |1> by -(omega21 - delta), cavity by delta_c.
  const MatrixXcd Ha = params.delta * projector(2, 2) -
                       (params.omega21 - params.delta) * projector(1, 1) +
                       params.omega_L_rabi * (projector(0, 2) + projector(2, 0));
  const MatrixXcd H = atom(Ha) + params.delta_c * kron(ia, ad * a) +
                      params.g1 * (kron(projector(0, 1), ad) + kron(projector(1, 0), a)) +
                      params.g2 * (kron(projector(0, 2), ad) + kron(projector(2, 0), a));

  const Eigen::Index dim = 3 * nc;
  const MatrixXcd id = MatrixXcd::Identity(dim, dim);
  MatrixXcd L = -I * (kron(id, H) - kron(H.transpose(), id));

  const double g12 = effective_gamma12(params);
  L += dissipator(params.gamma1, atom(projector(0, 1)), atom(projector(1, 0)), atom(projector(1, 1)));
  L += dissipator(params.gamma2, atom(projector(0, 2)), atom(projector(2, 0)), atom(projector(2, 2)));
  L += dissipator(g12, atom(projector(0, 1)), atom(projector(2, 0)), atom(projector(2, 1)));
  L += dissipator(g12, atom(projector(0, 2)), atom(projector(1, 0)), atom(projector(1, 2)));
  const MatrixXcd ac = kron(ia, a);
  L += dissipator(params.kappa, ac, ac.adjoint(), ac.adjoint() * ac);
  return L;
}

double trace_preservation_error(const MatrixXcd& L) {
  const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(L.rows()))));
  Eigen::VectorXcd vec_id = Eigen::VectorXcd::Zero(L.rows());
  for (Eigen::Index i = 0; i < dim; ++i) vec_id(i * dim + i) = 1.0;
  return (vec_id.adjoint() * L).cwiseAbs().maxCoeff();
}

LindbladResult lindblad_steady_state(const SystemParams& params, FockTruncation trunc) {
  const auto [c, s] = drive_mixing(params);
  const FullSolve base = solve_full(params, trunc.n_max);
  const FullSolve next = solve_full(params, trunc.n_max + 1);

  LindbladResult out;
  out.state = to_dressed(base.atom, c, s);
  out.n_max = trunc.n_max;
  out.convergence_delta = state_distance(out.state, to_dressed(next.atom, c, s));
  out.hermiticity_error = base.hermiticity_error;
  out.min_eigenvalue = base.min_eigenvalue;
  out.mean_photon_number = base.mean_photon_number;
  if (!(out.convergence_delta < 1e-4)) {
    throw Error(ErrorCode::NonConvergedTruncation,
                "n_max = " + std::to_string(trunc.n_max) + " changes by " +
                    std::to_string(out.convergence_delta) + " at n_max + 1");
  }
  return out;
}

Complex LimitCycleRecord::harmonic(Element e, int n) const {
  if (n < -kMaxHarmonic || n > kMaxHarmonic)
    throw Error(ErrorCode::InvalidArgument, "harmonic index out of range");
  return harmonics[static_cast<std::size_t>(e)][static_cast<std::size_t>(n + kMaxHarmonic)];
}

LimitCycleRecord time_domain_reference(const SystemParams& params, double omega_p,
                                       double delta_p, const TimeDomainOptions& opt) {
  namespace ode = boost::numeric::odeint;
  if (!std::isfinite(delta_p) || delta_p == 0.0)
    throw Error(ErrorCode::InvalidArgument, "delta_p must be finite and nonzero");
  if (!std::isfinite(omega_p) || omega_p < 0.0)
    throw Error(ErrorCode::InvalidArgument, "omega_p must be finite and >= 0");
  if (opt.samples_per_period < 2 * LimitCycleRecord::kMaxHarmonic + 1)
    throw Error(ErrorCode::InvalidArgument, "too few samples per period");

  const ReducedSystem sys{coefficients(params), omega_p, delta_p};
  const double period = 2.0 * std::numbers::pi / std::abs(delta_p);
  const double horizon =
      opt.horizon > 0.0 ? opt.horizon : 50.0 / std::min(params.gamma1, params.gamma2);
  const double dt0 = 1e-3 / (1.0 + sys.k.basis.omega_R + std::abs(params.omega21));

  State y{};
  put(y, MM, 0.5);

  auto stepper = ode::make_controlled(opt.abs_tol, opt.rel_tol,
                                      ode::runge_kutta_fehlberg78<State>());
  double t = 0.0;
  int periods = 0;
  double drift = 0.0;
  for (;;) {
    const State before = y;
    ode::integrate_adaptive(stepper, sys, y, t, t + period, dt0);
    t += period;
    ++periods;
    drift = max_abs_diff(before, y);
    if (periods >= 2 && drift < opt.drift_tolerance) break;
    if (t + period > horizon) {
      throw Error(ErrorCode::NoLimitCycle,
                  "period-to-period drift " + std::to_string(drift) + " after t = " +
                      std::to_string(t));
    }
  }

  LimitCycleRecord rec;
  rec.omega_p = omega_p;
  rec.delta_p = delta_p;
  rec.period = period;
  rec.t_start = t;
  rec.periods = periods;
  const int N = opt.samples_per_period;
  for (int j = 0; j <= N; ++j) rec.times.push_back(t + period * j / N);

  std::vector<State> states;
  const State start = y;
  ode::integrate_times(stepper, sys, y, rec.times.begin(), rec.times.end(), dt0,
                       [&](const State& st, double) { states.push_back(st); });
  rec.drift = max_abs_diff(start, states.back());
  rec.times.pop_back();
  states.pop_back();

  for (const State& st : states) rec.hermiticity_error = std::max(rec.hermiticity_error, hermiticity_error(st));
  for (Element e : kAllElements) {
    const auto ie = static_cast<std::size_t>(e);
    auto& samples = rec.samples[ie];
    for (const State& st : states) samples.push_back(element_value(st, e));
    for (int n = -LimitCycleRecord::kMaxHarmonic; n <= LimitCycleRecord::kMaxHarmonic; ++n) {
      Complex acc;
      for (int j = 0; j < N; ++j) acc += samples[static_cast<std::size_t>(j)] * std::polar(1.0, -n * delta_p * rec.times[static_cast<std::size_t>(j)]);
      rec.harmonics[ie][static_cast<std::size_t>(n + LimitCycleRecord::kMaxHarmonic)] = acc / static_cast<double>(N);
    }
  }
  if (rec.drift > opt.drift_tolerance) {
    throw Error(ErrorCode::NoLimitCycle,
                "drift over the sampled period " + std::to_string(rec.drift));
  }
  return rec;
}

}  // namespace vkerr
