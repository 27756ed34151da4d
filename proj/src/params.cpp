#include "vkerr/params.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "vkerr/error.hpp"

namespace vkerr {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::InvalidParams, message);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_value(std::string_view key, std::string_view text) {
  if (key == "near_degenerate_approx") {
    if (text == "true") return 1.0;
    if (text == "false") return 0.0;
  }
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorCode::ConfigError,
                "invalid value '" + std::string(text) + "' for key '" + std::string(key) + "'");
  }
  return value;
}

}  // namespace

void validate(const SystemParams& p) {
  const auto finite = [](double v) { return std::isfinite(v); };
  require(finite(p.gamma1) && p.gamma1 > 0.0, "gamma1 must be > 0");
  require(finite(p.gamma2) && p.gamma2 > 0.0, "gamma2 must be > 0");
  require(finite(p.kappa) && p.kappa > 0.0, "kappa must be > 0");
  require(finite(p.g1) && p.g1 >= 0.0, "g1 must be >= 0");
  require(finite(p.g2) && p.g2 >= 0.0, "g2 must be >= 0");
  require(finite(p.omega_L_rabi) && p.omega_L_rabi >= 0.0, "omega_L_rabi must be >= 0");
  require(finite(p.omega21) && finite(p.delta) && finite(p.delta_c),
          "omega21, delta and delta_c must be finite");
  require(finite(p.regime_factor) && p.regime_factor > 0.0, "regime_factor must be > 0");
  require(!(p.theta && p.gamma12_override), "theta and gamma12_override are mutually exclusive");
  if (p.theta) require(finite(*p.theta), "theta must be finite");
  if (p.gamma12_override) {
    require(finite(*p.gamma12_override), "gamma12_override must be finite");
    // |gamma12| <= sqrt(gamma1 gamma2), with a little room for rounding.
    const double bound = std::sqrt(p.gamma1 * p.gamma2);
    require(std::abs(*p.gamma12_override) <= bound * (1.0 + 1e-12),
            "|gamma12| must not exceed sqrt(gamma1 gamma2)");
  }
}

double effective_gamma12(const SystemParams& p) {
  if (p.gamma12_override) return *p.gamma12_override;
  if (p.theta) return std::sqrt(p.gamma1 * p.gamma2) * std::cos(*p.theta);
  return 0.0;
}

std::string_view gamma12_source(const SystemParams& p) {
  if (p.gamma12_override) return "override";
  if (p.theta) return "theta";
  return "default";
}

bool regime_advisory(const SystemParams& p) {
  const double f = p.regime_factor;
  const double g_max = std::max(p.g1, p.g2);
  const double g_min = std::min(p.g1, p.g2);
  const double gamma_max = std::max(p.gamma1, p.gamma2);
  return !(p.kappa >= f * g_max && g_min >= f * gamma_max);
}

double probe_detuning_to_delta_p(double omega, const SystemParams& p) {
  return omega - p.omega21 + p.delta;
}

std::vector<double> uniform_axis(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || step <= 0.0 ||
      stop < start) {
    throw Error(ErrorCode::InvalidArgument, "axis needs finite start <= stop and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = start + static_cast<double>(i) * step;
  return values;
}

ProbeGrid::ProbeGrid(std::vector<double> omega_values) : values_(std::move(omega_values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw Error(ErrorCode::InvalidArgument, "probe grid values must be finite");
    if (i > 0 && !(values_[i] > values_[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "probe grid must be strictly increasing");
  }
}

ProbeGrid ProbeGrid::uniform(double start, double stop, double step) {
  return ProbeGrid(uniform_axis(start, stop, step));
}

std::vector<double> ProbeGrid::delta_p(const SystemParams& params) const {
  std::vector<double> out;
  out.reserve(values_.size());
  for (double w : values_) out.push_back(probe_detuning_to_delta_p(w, params));
  return out;
}

const std::vector<std::string>& param_names() {
  static const std::vector<std::string> names = {
      "gamma1", "gamma2",       "theta", "gamma12_override", "g1",
      "g2",     "kappa",        "omega21", "omega_L_rabi",   "delta",
      "delta_c", "near_degenerate_approx", "regime_factor"};
  return names;
}

bool is_param_name(std::string_view key) {
  const auto& names = param_names();
  return std::find(names.begin(), names.end(), key) != names.end();
}

double get_param(const SystemParams& p, std::string_view key) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  if (key == "gamma1") return p.gamma1;
  if (key == "gamma2") return p.gamma2;
  if (key == "theta") return p.theta.value_or(nan);
  if (key == "gamma12_override") return p.gamma12_override.value_or(nan);
  if (key == "g1") return p.g1;
  if (key == "g2") return p.g2;
  if (key == "kappa") return p.kappa;
  if (key == "omega21") return p.omega21;
  if (key == "omega_L_rabi") return p.omega_L_rabi;
  if (key == "delta") return p.delta;
  if (key == "delta_c") return p.delta_c;
  if (key == "near_degenerate_approx") return p.near_degenerate_approx ? 1.0 : 0.0;
  if (key == "regime_factor") return p.regime_factor;
  throw Error(ErrorCode::ConfigError, "unknown parameter '" + std::string(key) + "'");
}

void set_param(SystemParams& p, std::string_view key, double value) {
  if (key == "gamma1") p.gamma1 = value;
  else if (key == "gamma2") p.gamma2 = value;
  else if (key == "theta") p.theta = value;
  else if (key == "gamma12_override") p.gamma12_override = value;
  else if (key == "g1") p.g1 = value;
  else if (key == "g2") p.g2 = value;
  else if (key == "kappa") p.kappa = value;
  else if (key == "omega21") p.omega21 = value;
  else if (key == "omega_L_rabi") p.omega_L_rabi = value;
  else if (key == "delta") p.delta = value;
  else if (key == "delta_c") p.delta_c = value;
  else if (key == "near_degenerate_approx") p.near_degenerate_approx = value != 0.0;
  else if (key == "regime_factor") p.regime_factor = value;
  else throw Error(ErrorCode::ConfigError, "unknown parameter '" + std::string(key) + "'");
}

SystemParams parse_config(std::string_view text, SystemParams base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find_first_of("=:");
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError,
                  "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!is_param_name(key)) {
      throw Error(ErrorCode::ConfigError,
                  "line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    set_param(base, key, parse_value(key, value));
  }
  return base;
}

SystemParams load_config(const std::string& path, SystemParams base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), std::move(base));
}

}  // namespace vkerr
