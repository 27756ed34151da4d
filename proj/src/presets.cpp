#include "vkerr/presets.hpp"

#include <algorithm>

#include "vkerr/error.hpp"

namespace vkerr {

namespace {

// kappa = 100, g1 = 5, g2 = 15, gamma1 = gamma2 = 0.1, omega21 = Omega_L = 200,
// delta = 0, gamma12 = 0; delta_c varies.
SystemParams base(double delta_c) {
  SystemParams p;
  p.delta_c = delta_c;
  return p;
}

Preset probe_preset(std::string name, std::string description, SystemParams p) {
  Preset pr;
  pr.name = std::move(name);
  pr.description = std::move(description);
  pr.params = p;
  return pr;
}

std::vector<Preset> build() {
  std::vector<Preset> out;
  out.push_back(probe_preset("fig2a", "probe sweep, cavity resonant with the drive (delta_c = 0)", base(0.0)));
  out.push_back(probe_preset("fig2b", "probe sweep, delta_c = 50", base(50.0)));
  out.push_back(probe_preset("fig2c", "probe sweep, delta_c = 200", base(200.0)));

  SystemParams p = base(200.0);
  p.omega21 = 250.0;
  out.push_back(probe_preset("fig3a", "fig2c with the upper levels split by omega21 = 250", p));

  out.push_back(probe_preset("fig3b", "ratio curves at omega21 = 200 (compare fig3a for 250)", base(200.0)));

  p = base(200.0);
  p.gamma1 = 0.001;
  Preset f4a = probe_preset("fig4a", "fig2c with a weakly damped probe transition (gamma1 = 0.001)", p);
  f4a.omega = 200.122;
  out.push_back(f4a);

  Preset f4b = probe_preset("fig4b", "g1 sweep at omega = 200.122, gamma1 = 0.001", p);
  f4b.axis = "g1";
  f4b.start = 0.0;
  f4b.stop = 10.0;
  f4b.step = 0.05;
  f4b.omega = 200.122;
  out.push_back(f4b);

  p = base(200.0);
  p.kappa = 200.0;
  out.push_back(probe_preset("fig5", "fig2c with a stronger cavity damping (kappa = 200)", p));
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& find_preset(std::string_view name) {
  const auto& all = presets();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
  if (it == all.end()) throw Error(ErrorCode::InvalidArgument, "unknown preset '" + std::string(name) + "'");
  return *it;
}

}  // namespace vkerr
