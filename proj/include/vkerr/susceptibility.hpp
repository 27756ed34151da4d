#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vkerr/dressed.hpp"
#include "vkerr/params.hpp"

namespace vkerr {

/// Normalized chi(1) and chi(3) at one probe detuning, without the physical
/// prefactor. Sign chosen so that free-space absorption has Im chi(1) > 0.
struct Susceptibility {
  double re_chi1 = 0.0;
  double im_chi1 = 0.0;
  double re_chi3 = 0.0;
  double im_chi3 = 0.0;

  Complex chi1() const { return {re_chi1, im_chi1}; }
  Complex chi3() const { return {re_chi3, im_chi3}; }
  /// Re chi3 / Im chi1; empty when the quotient is not finite.
  std::optional<double> ratio_31() const;
  /// Re chi3 / Im chi3; empty when the quotient is not finite.
  std::optional<double> ratio_33() const;
};

/// chi(k) = -[s (rho_1+)_k^-1 - c (rho_1-)_k^-1].
Susceptibility chi(const CoefficientSet& coeffs, double delta_p);
Susceptibility chi(const SystemParams& params, double omega);

struct SweepRow {
  double axis = 0.0;
  std::optional<Susceptibility> value;
  std::string error;  // set when value is empty
};

struct SweepResult {
  std::string axis_name;  // "omega" or a SystemParams field
  std::vector<SweepRow> rows;
};

/// Evaluates chi over a probe grid. threads = 0 uses the hardware concurrency.
/// Parameter errors throw; per-point failures are stored in the row.
SweepResult sweep(const SystemParams& params, const ProbeGrid& grid, unsigned threads = 0);

/// Sweeps one SystemParams field at fixed probe detuning omega. Values must be
/// strictly increasing. Invalid parameter values become failed rows.
SweepResult sweep_parameter(const SystemParams& params, std::string_view name,
                            std::span<const double> values, double omega,
                            unsigned threads = 0);

struct FeatureThresholds {
  // Transparency: |Im chi1| <= fraction * max |Re chi3| at an Im chi3 zero.
  double transparency_fraction = 0.05;
  // Restricts the analysis to axis values inside [lo, hi].
  std::optional<std::pair<double, double>> window;
};

struct Extremum {
  double axis = 0.0;
  double value = 0.0;
};

struct FeatureReport {
  std::vector<double> im_chi3_zeros;
  std::vector<Extremum> re_chi3_extrema;
  std::optional<Extremum> re_chi3_peak;  // largest |Re chi3|
  std::vector<double> transparency_points;
  std::optional<Extremum> ratio_31_peak;  // largest |Re chi3 / Im chi1|
  // Re chi3 / Im chi3 diverges at every Im chi3 zero; its peak is the zero
  // with the largest |Re chi3|, value = that Re chi3.
  std::optional<Extremum> ratio_33_peak;
  double transparency_threshold = 0.0;

  bool empty() const {
    return im_chi3_zeros.empty() && re_chi3_extrema.empty() && !re_chi3_peak &&
           !ratio_31_peak;
  }
};

/// Requires at least three successful rows (after windowing), otherwise
/// throws Error(InvalidArgument). Failed rows are skipped.
FeatureReport find_features(const SweepResult& result, const FeatureThresholds& thresholds = {});

// Sampled-data helpers used by find_features.

/// Linear-interpolated sign changes of y(x); exact zeros are reported once.
std::vector<double> zero_crossings(std::span<const double> x, std::span<const double> y);

/// Vertex of the parabola through three points with distinct x.
Extremum parabolic_vertex(double x0, double y0, double x1, double y1, double x2, double y2);

}  // namespace vkerr
