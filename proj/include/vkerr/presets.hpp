#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vkerr/params.hpp"

namespace vkerr {

/// Named parameter set plus a default sweep. The physical parameters are
/// fixed per preset; the sweep ranges are defaults and can be overridden.
struct Preset {
  std::string name;
  std::string description;
  SystemParams params;
  std::string axis = "omega";
  double start = 190.0;
  double stop = 210.0;
  double step = 0.005;
  // Probe detuning for parameter sweeps and point evaluations.
  std::optional<double> omega;
};

const std::vector<Preset>& presets();

/// Throws Error(InvalidArgument) for an unknown name.
const Preset& find_preset(std::string_view name);

}  // namespace vkerr
