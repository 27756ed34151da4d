#include "vkerr/susceptibility.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "vkerr/error.hpp"
#include "vkerr/floquet.hpp"

namespace vkerr {

namespace {

std::optional<double> finite_ratio(double num, double den) {
  const double r = num / den;
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}

Complex assemble(const ProbeCoherence& p, const DressedBasis& b) {
  return -(b.s * p.one_plus - b.c * p.one_minus);
}

// Runs body(i) for i in [0, count) on a small pool; each index writes only its
// own slot, so no further synchronization is needed.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
}

SweepRow evaluate_row(double axis, const std::function<Susceptibility()>& f) {
  SweepRow row;
  row.axis = axis;
  try {
    row.value = f();
  } catch (const Error& e) {
    row.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  return row;
}

}  // namespace

std::optional<double> Susceptibility::ratio_31() const { return finite_ratio(re_chi3, im_chi1); }
std::optional<double> Susceptibility::ratio_33() const { return finite_ratio(re_chi3, im_chi3); }

Susceptibility chi(const CoefficientSet& coeffs, double delta_p) {
  HarmonicTable table(coeffs, delta_p);
  const Complex c1 = assemble(probe_coherence(1, table), coeffs.basis);
  const Complex c3 = assemble(probe_coherence(3, table), coeffs.basis);
  return {c1.real(), c1.imag(), c3.real(), c3.imag()};
}

Susceptibility chi(const SystemParams& params, double omega) {
  if (!std::isfinite(omega)) throw Error(ErrorCode::InvalidArgument, "omega must be finite");
  return chi(coefficients(params), probe_detuning_to_delta_p(omega, params));
}

SweepResult sweep(const SystemParams& params, const ProbeGrid& grid, unsigned threads) {
  const CoefficientSet coeffs = coefficients(params);
  const auto omega = grid.values();
  const auto delta_p = grid.delta_p(params);

  SweepResult result{"omega", std::vector<SweepRow>(omega.size())};
  parallel_for(omega.size(), threads, [&](std::size_t i) {
    result.rows[i] = evaluate_row(omega[i], [&] { return chi(coeffs, delta_p[i]); });
  });
  return result;
}

SweepResult sweep_parameter(const SystemParams& params, std::string_view name,
                            std::span<const double> values, double omega, unsigned threads) {
  if (!is_param_name(name))
    throw Error(ErrorCode::InvalidArgument, "unknown sweep parameter '" + std::string(name) + "'");
  if (!std::isfinite(omega)) throw Error(ErrorCode::InvalidArgument, "omega must be finite");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || (i > 0 && !(values[i] > values[i - 1])))
      throw Error(ErrorCode::InvalidArgument, "sweep values must be finite and strictly increasing");
  }

  SweepResult result{std::string(name), std::vector<SweepRow>(values.size())};
  parallel_for(values.size(), threads, [&](std::size_t i) {
    result.rows[i] = evaluate_row(values[i], [&] {
      SystemParams p = params;
      set_param(p, name, values[i]);
      return chi(p, omega);
    });
  });
  return result;
}

std::vector<double> zero_crossings(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorCode::InvalidArgument, "zero_crossings: size mismatch");
  std::vector<double> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] == 0.0) {
      out.push_back(x[i]);
      continue;
    }
    if (i + 1 < x.size() && y[i + 1] != 0.0 && (y[i] < 0.0) != (y[i + 1] < 0.0)) {
      const double t = y[i] / (y[i] - y[i + 1]);
      out.push_back(x[i] + t * (x[i + 1] - x[i]));
    }
  }
  return out;
}

Extremum parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double a = (x1 - x0) * (y1 - y2);
  const double b = (x1 - x2) * (y1 - y0);
  const double den = a - b;
  if (den == 0.0) return {x1, y1};  // collinear
  const double xv = x1 - 0.5 * ((x1 - x0) * a - (x1 - x2) * b) / den;
  // Lagrange form evaluated at the vertex.
  const double l0 = (xv - x1) * (xv - x2) / ((x0 - x1) * (x0 - x2));
  const double l1 = (xv - x0) * (xv - x2) / ((x1 - x0) * (x1 - x2));
  const double l2 = (xv - x0) * (xv - x1) / ((x2 - x0) * (x2 - x1));
  return {xv, y0 * l0 + y1 * l1 + y2 * l2};
}

FeatureReport find_features(const SweepResult& result, const FeatureThresholds& th) {
  std::vector<double> x;
  std::vector<Susceptibility> v;
  for (const auto& row : result.rows) {
    if (!row.value) continue;
    if (th.window && (row.axis < th.window->first || row.axis > th.window->second)) continue;
    x.push_back(row.axis);
    v.push_back(*row.value);
  }
  if (x.size() < 3)
    throw Error(ErrorCode::InvalidArgument, "feature detection needs at least three rows");

  const auto column = [&](auto member) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), member);
    return out;
  };
  const auto re3 = column([](const Susceptibility& s) { return s.re_chi3; });
  const auto im3 = column([](const Susceptibility& s) { return s.im_chi3; });
  const auto im1 = column([](const Susceptibility& s) { return s.im_chi1; });
  const std::size_t n = x.size();

  // Refines sample i of y (used by both |Re chi3| and |ratio| peaks).
  const auto refine = [&](const std::vector<double>& y, std::size_t i) -> Extremum {
    if (i == 0 || i + 1 == n) return {x[i], y[i]};
    return parabolic_vertex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]);
  };
  // Linear interpolation of y at a point inside [x.front(), x.back()].
  const auto interp = [&](const std::vector<double>& y, double at) {
    const auto it = std::upper_bound(x.begin(), x.end(), at);
    if (it == x.begin()) return y.front();
    if (it == x.end()) return y.back();
    const std::size_t j = static_cast<std::size_t>(it - x.begin());
    const double t = (at - x[j - 1]) / (x[j] - x[j - 1]);
    return y[j - 1] + t * (y[j] - y[j - 1]);
  };

  FeatureReport rep;
  rep.im_chi3_zeros = zero_crossings(x, im3);

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const bool is_max = re3[i] >= re3[i - 1] && re3[i] > re3[i + 1];
    const bool is_min = re3[i] <= re3[i - 1] && re3[i] < re3[i + 1];
    if (is_max || is_min) rep.re_chi3_extrema.push_back(refine(re3, i));
  }

  std::size_t ipk = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(re3[i]) > std::abs(re3[ipk])) ipk = i;
  if (re3[ipk] != 0.0) rep.re_chi3_peak = refine(re3, ipk);

  const double peak = std::abs(re3[ipk]);
  rep.transparency_threshold = th.transparency_fraction * peak;
  for (double z : rep.im_chi3_zeros) {
    if (std::abs(interp(im1, z)) <= rep.transparency_threshold) rep.transparency_points.push_back(z);
  }

  // Ratio Re chi3 / Im chi1: only refine when all three neighbours are finite.
  std::vector<double> r31(n, 0.0);
  std::optional<std::size_t> irat;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = v[i].ratio_31();
    if (!r || *r == 0.0) continue;
    r31[i] = *r;
    if (!irat || std::abs(*r) > std::abs(r31[*irat])) irat = i;
  }
  if (irat) {
    const std::size_t i = *irat;
    const bool neighbours = i > 0 && i + 1 < n && v[i - 1].ratio_31() && v[i + 1].ratio_31();
    rep.ratio_31_peak = neighbours ? refine(r31, i) : Extremum{x[i], r31[i]};
  }

  for (double z : rep.im_chi3_zeros) {
    const double value = interp(re3, z);
    if (!rep.ratio_33_peak || std::abs(value) > std::abs(rep.ratio_33_peak->value))
      rep.ratio_33_peak = Extremum{z, value};
  }
  return rep;
}

}  // namespace vkerr
