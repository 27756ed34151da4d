#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vkerr {

/// Physical parameters of the driven V atom in the damped cavity.
///
/// All rates and detunings are dimensionless multiples of a reference rate
/// gamma. Detunings are taken from the drive frequency omega_L:
/// delta = omega_2 - omega_L, delta_c = omega_c - omega_L. Unset fields keep the
/// defaults below (the fig2c preset).
struct SystemParams {
  double gamma1 = 0.1;
  double gamma2 = 0.1;
  // Cross damping is either given through the dipole angle or directly. With
  // neither set it is zero (perpendicular dipoles).
  std::optional<double> theta;
  std::optional<double> gamma12_override;
  double g1 = 5.0;
  double g2 = 15.0;
  double kappa = 100.0;
  double omega21 = 200.0;
  double omega_L_rabi = 200.0;
  double delta = 0.0;
  double delta_c = 200.0;

  // Replace B4 -> B0 and B3 -> B1 (near-degenerate upper levels).
  bool near_degenerate_approx = false;
  // Ratio used for the bad-cavity regime advisory.
  double regime_factor = 3.0;

  bool operator==(const SystemParams&) const = default;
};

/// Throws Error(InvalidParams) when a rate has the wrong sign, theta and the
/// override are both given, or |gamma12| exceeds sqrt(gamma1 gamma2).
void validate(const SystemParams& params);

double effective_gamma12(const SystemParams& params);

/// "default", "theta" or "override".
std::string_view gamma12_source(const SystemParams& params);

/// True when kappa >> g1, g2 >> gamma1, gamma2 does not hold at the configured
/// factor. Advisory only.
bool regime_advisory(const SystemParams& params);

/// Converts the plotted probe detuning omega = omega_p - omega_1 into the
/// drive-frame detuning delta_p = omega_p - omega_L.
double probe_detuning_to_delta_p(double omega, const SystemParams& params);

/// Strictly increasing, finite probe detunings omega.
class ProbeGrid {
 public:
  explicit ProbeGrid(std::vector<double> omega_values);

  /// Inclusive uniform grid; the last point is kept when stop lies on the grid.
  static ProbeGrid uniform(double start, double stop, double step);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  std::vector<double> delta_p(const SystemParams& params) const;

 private:
  std::vector<double> values_;
};

/// Inclusive uniform axis values, shared by probe and parameter sweeps.
std::vector<double> uniform_axis(double start, double stop, double step);

// Flat key/value access by field name (config files, CLI overrides, sweeps).
const std::vector<std::string>& param_names();
bool is_param_name(std::string_view key);
double get_param(const SystemParams& params, std::string_view key);
void set_param(SystemParams& params, std::string_view key, double value);

/// Parses `key = value` lines; `#` starts a comment. Keys not present keep
/// their defaults. Throws Error(ConfigError) on unknown keys or bad numbers.
SystemParams parse_config(std::string_view text, SystemParams base = {});
SystemParams load_config(const std::string& path, SystemParams base = {});

}  // namespace vkerr
