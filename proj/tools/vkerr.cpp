// Command-line front end for the vkerr library.
#include <iostream>

#include <CLI11.hpp>

#include "vkerr/cli.hpp"
#include "vkerr/error.hpp"
#include "vkerr/io.hpp"

namespace {

template <class T>
void store(CLI::App& app, const char* name, std::optional<T>& target, const char* help) {
  app.add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear and Kerr susceptibilities of a driven V atom in a damped cavity"};
  app.set_version_flag("--version", VKERR_VERSION);

  vkerr::RunSpec spec;
  std::string mode_pos, preset_pos, mode_flag;
  app.add_option("command", mode_pos,
                 "point | sweep | features | oracle-compare | figure-preset | coefficients");
  app.add_option("preset_name", preset_pos, "preset name for figure-preset");
  app.add_option("--mode", mode_flag, "same as the positional mode");
  store(app, "--config", spec.config_path, "key = value parameter file");
  store(app, "--preset", spec.preset, "fig2a fig2b fig2c fig3a fig3b fig4a fig4b fig5");
  store(app, "--axis", spec.axis, "omega or a parameter name");
  store(app, "--start", spec.start, "first axis value");
  store(app, "--stop", spec.stop, "last axis value (inclusive)");
  store(app, "--step", spec.step, "axis step");
  store(app, "--omega", spec.omega, "probe detuning omega = omega_p - omega_1");
  store(app, "--out", spec.out_path, "output file (default stdout)");
  store(app, "--format", spec.format, "csv or json");
  store(app, "--gamma12", spec.gamma12, "cross-damping override");
  store(app, "--timestamp", spec.timestamp, "optional timestamp recorded in JSON metadata");
  app.add_option("--threads", spec.threads, "worker threads (0 = all cores)");
  app.add_option("--fock-cutoff", spec.fock_cutoff, "photon cutoff for the Lindblad oracle")
      ->check(CLI::PositiveNumber);
  app.add_option("--transparency", spec.transparency_fraction,
                 "transparency threshold as a fraction of max |Re chi3|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    // With --mode, a single positional word is the preset name.
    if (!mode_flag.empty() && !mode_pos.empty() && mode_pos != mode_flag) {
      if (!preset_pos.empty())
        throw vkerr::Error(vkerr::ErrorCode::InvalidArgument, "conflicting modes given");
      preset_pos = mode_pos;
    }
    const std::string mode = mode_flag.empty() ? mode_pos : mode_flag;
    if (mode.empty()) throw vkerr::Error(vkerr::ErrorCode::InvalidArgument, "no mode given");
    spec.mode = vkerr::parse_mode(mode);
    if (!preset_pos.empty()) {
      if (spec.preset && *spec.preset != preset_pos)
        throw vkerr::Error(vkerr::ErrorCode::InvalidArgument, "conflicting presets given");
      spec.preset = preset_pos;
    }
  } catch (const vkerr::Error& e) {
    std::cerr << vkerr::error_json(vkerr::to_string(e.code()), e.what()).dump() << '\n';
    return 2;
  }
  return vkerr::run_reporting(spec, std::cout, std::cerr);
}
