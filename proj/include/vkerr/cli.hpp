#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vkerr {

enum class Mode { Point, Sweep, Features, OracleCompare, FigurePreset, Coefficients };

/// Throws Error(InvalidArgument) for an unknown name.
Mode parse_mode(std::string_view name);
std::string_view to_string(Mode mode);

struct RunSpec {
  Mode mode = Mode::Point;
  std::optional<std::string> config_path;
  std::optional<std::string> preset;
  std::optional<std::string> axis;  // "omega" or a SystemParams field
  std::optional<double> start, stop, step;
  std::optional<double> omega;
  std::optional<std::string> out_path;  // stdout when empty
  std::optional<std::string> format;    // "csv" or "json"; mode decides when unset
  unsigned threads = 0;
  std::optional<double> gamma12;
  int fock_cutoff = 4;
  std::optional<std::string> timestamp;
  double transparency_fraction = 0.05;
};

/// Resolves parameters (preset, then config file, then --gamma12), runs the
/// mode and writes the result. Library errors propagate as vkerr::Error.
void run(const RunSpec& spec, std::ostream& out);

/// run() with error reporting: returns 0, or writes an error JSON to err and
/// returns 1.
int run_reporting(const RunSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace vkerr
