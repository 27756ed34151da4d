#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "vkerr/dressed.hpp"
#include "vkerr/floquet.hpp"
#include "vkerr/susceptibility.hpp"

namespace vkerr {

using Json = nlohmann::ordered_json;

/// Provenance block attached to every JSON output.
struct RunMetadata {
  std::string mode;
  SystemParams params;
  std::optional<std::string> preset;
  std::optional<std::string> timestamp;  // excluded from determinism checks
};

/// Nine significant digits in scientific notation, e.g. "2.00122000e+02".
std::string format_number(double value);

void write_csv(std::ostream& out, const SweepResult& result);

Json to_json(const SystemParams& params);
Json to_json(const RunMetadata& meta);
Json to_json(const Susceptibility& value);
Json to_json(const SweepResult& result);
Json to_json(const CoefficientSet& coeffs);
Json to_json(const SteadyState0& state);
Json to_json(const FeatureReport& report);
Json to_json(Complex z);

/// {"error": {"code": ..., "message": ...}}
Json error_json(std::string_view code, std::string_view message);

}  // namespace vkerr
