#include "vkerr/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "vkerr/error.hpp"
#include "vkerr/io.hpp"
#include "vkerr/oracle.hpp"
#include "vkerr/presets.hpp"

namespace vkerr {

namespace {

struct Resolved {
  SystemParams params;
  const Preset* preset = nullptr;
};

Resolved resolve(const RunSpec& spec) {
  Resolved r;
  if (spec.preset) {
    r.preset = &find_preset(*spec.preset);
    r.params = r.preset->params;
  }
  if (spec.config_path) r.params = load_config(*spec.config_path, r.params);
  if (spec.gamma12) {
    r.params.theta.reset();
    r.params.gamma12_override = *spec.gamma12;
  }
  validate(r.params);
  return r;
}

RunMetadata metadata(const RunSpec& spec, const Resolved& r) {
  return {std::string(to_string(spec.mode)), r.params, spec.preset, spec.timestamp};
}

double require_omega(const RunSpec& spec, const Resolved& r) {
  if (spec.omega) return *spec.omega;
  if (r.preset && r.preset->omega) return *r.preset->omega;
  throw Error(ErrorCode::InvalidArgument, "--omega is required for this mode");
}

SweepResult run_sweep(const RunSpec& spec, const Resolved& r) {
  const Preset* pr = r.preset;
  const std::string axis = spec.axis.value_or(pr ? pr->axis : "omega");
  const auto pick = [&](const std::optional<double>& v, double Preset::*field, const char* flag) {
    if (v) return *v;
    if (pr && pr->axis == axis) return pr->*field;
    throw Error(ErrorCode::InvalidArgument, std::string(flag) + " is required for this sweep");
  };
  const auto values = uniform_axis(pick(spec.start, &Preset::start, "--start"),
                                   pick(spec.stop, &Preset::stop, "--stop"),
                                   pick(spec.step, &Preset::step, "--step"));
  if (axis == "omega") return sweep(r.params, ProbeGrid(values), spec.threads);
  if (!is_param_name(axis))
    throw Error(ErrorCode::InvalidArgument, "axis must be omega or a parameter name, got '" + axis + "'");
  return sweep_parameter(r.params, axis, values, require_omega(spec, r), spec.threads);
}

void emit_sweep(const RunSpec& spec, const Resolved& r, const SweepResult& result, std::ostream& out) {
  if (spec.format.value_or("csv") == "csv") {
    write_csv(out, result);
    return;
  }
  Json j;
  j["metadata"] = to_json(metadata(spec, r));
  j["result"] = to_json(result);
  out << j.dump(2) << '\n';
}

Json compare_element(double analytic, double oracle) {
  const double abs_delta = std::abs(analytic - oracle);
  return {{"analytic", analytic},
          {"oracle", oracle},
          {"abs_delta", abs_delta},
          {"rel_delta", oracle != 0.0 ? abs_delta / std::abs(oracle) : 0.0}};
}

Json oracle_report(const RunSpec& spec, const Resolved& r) {
  const CoefficientSet coeffs = coefficients(r.params);
  const SteadyState0 an = zeroth_order_steady_state(coeffs);
  const LindbladResult li = lindblad_steady_state(r.params, {spec.fock_cutoff});
  const SteadyState0& ex = li.state;

  Json cmp;
  cmp["rho_11"] = compare_element(an.rho_11, ex.rho_11);
  cmp["rho_pp"] = compare_element(an.rho_pp, ex.rho_pp);
  cmp["rho_mm"] = compare_element(an.rho_mm, ex.rho_mm);
  cmp["re_rho_m1"] = compare_element(an.rho_m1.real(), ex.rho_m1.real());
  cmp["im_rho_m1"] = compare_element(an.rho_m1.imag(), ex.rho_m1.imag());
  double max_delta = 0.0;
  for (const auto& [k, v] : cmp.items()) max_delta = std::max(max_delta, v["abs_delta"].get<double>());

  Json j;
  j["metadata"] = to_json(metadata(spec, r));
  j["lindblad"] = {{"n_max", li.n_max},
                   {"convergence_delta", li.convergence_delta},
                   {"hermiticity_error", li.hermiticity_error},
                   {"min_eigenvalue", li.min_eigenvalue},
                   {"mean_photon_number", li.mean_photon_number}};
  j["steady_state"] = cmp;
  j["max_abs_delta"] = max_delta;

  // Probe check against the reduced time-domain integration, when a probe
  // detuning is given.
  if (spec.omega) {
    const double delta_p = probe_detuning_to_delta_p(*spec.omega, r.params);
    const double omega_p = 1e-2 * std::min(r.params.gamma1, r.params.gamma2);
    const LimitCycleRecord rec = time_domain_reference(r.params, omega_p, delta_p);
    HarmonicTable table(coeffs, delta_p);
    const double c = coeffs.basis.c, s = coeffs.basis.s;
    Json probe = Json::array();
    for (int n : {-1, -3}) {
      const int m = -n;
      const Complex td =
          s * rec.harmonic(Element::OnePlus, n) - c * rec.harmonic(Element::OneMinus, n);
      const Complex a = (s * table.at(Element::OnePlus, m, n) - c * table.at(Element::OneMinus, m, n)) *
                        std::pow(omega_p, m);
      probe.push_back({{"n", n},
                       {"order", m},
                       {"analytic", to_json(a)},
                       {"time_domain", to_json(td)},
                       {"rel_delta", std::abs(td - a) / std::abs(a)}});
    }
    j["time_domain"] = {{"omega", *spec.omega},
                        {"delta_p", delta_p},
                        {"omega_p", omega_p},
                        {"periods", rec.periods},
                        {"drift", rec.drift},
                        {"hermiticity_error", rec.hermiticity_error},
                        {"harmonics", probe}};
  }
  return j;
}

}  // namespace

Mode parse_mode(std::string_view name) {
  if (name == "point") return Mode::Point;
  if (name == "sweep") return Mode::Sweep;
  if (name == "features") return Mode::Features;
  if (name == "oracle-compare") return Mode::OracleCompare;
  if (name == "figure-preset") return Mode::FigurePreset;
  if (name == "coefficients") return Mode::Coefficients;
  throw Error(ErrorCode::InvalidArgument, "unknown mode '" + std::string(name) + "'");
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Point: return "point";
    case Mode::Sweep: return "sweep";
    case Mode::Features: return "features";
    case Mode::OracleCompare: return "oracle-compare";
    case Mode::FigurePreset: return "figure-preset";
    case Mode::Coefficients: return "coefficients";
  }
  return "?";
}

void run(const RunSpec& spec, std::ostream& out) {
  if (spec.format && *spec.format != "csv" && *spec.format != "json")
    throw Error(ErrorCode::InvalidArgument, "--format must be csv or json");
  if (spec.mode == Mode::FigurePreset && !spec.preset)
    throw Error(ErrorCode::InvalidArgument, "figure-preset needs a preset name");

  const Resolved r = resolve(spec);

  switch (spec.mode) {
    case Mode::Point: {
      const double omega = require_omega(spec, r);
      const Susceptibility v = chi(r.params, omega);
      if (spec.format.value_or("json") == "csv") {
        write_csv(out, SweepResult{"omega", {SweepRow{omega, v, {}}}});
        return;
      }
      Json j;
      j["metadata"] = to_json(metadata(spec, r));
      j["omega"] = omega;
      j["delta_p"] = probe_detuning_to_delta_p(omega, r.params);
      j["chi"] = to_json(v);
      out << j.dump(2) << '\n';
      return;
    }
    case Mode::Sweep:
    case Mode::FigurePreset:
      emit_sweep(spec, r, run_sweep(spec, r), out);
      return;
    case Mode::Features: {
      FeatureThresholds th;
      th.transparency_fraction = spec.transparency_fraction;
      const SweepResult result = run_sweep(spec, r);
      Json j;
      j["metadata"] = to_json(metadata(spec, r));
      j["axis_name"] = result.axis_name;
      j["transparency_fraction"] = th.transparency_fraction;
      j["features"] = to_json(find_features(result, th));
      out << j.dump(2) << '\n';
      return;
    }
    case Mode::OracleCompare:
      out << oracle_report(spec, r).dump(2) << '\n';
      return;
    case Mode::Coefficients: {
      Json j;
      j["metadata"] = to_json(metadata(spec, r));
      j["coefficients"] = to_json(coefficients(r.params));
      out << j.dump(2) << '\n';
      return;
    }
  }
}

int run_reporting(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    if (!spec.out_path) {
      run(spec, out);
      return 0;
    }
    // Render fully before touching the file so a failure leaves no partial output.
    std::ostringstream buffer;
    run(spec, buffer);
    std::ofstream file(*spec.out_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + *spec.out_path + "'");
    file << buffer.str();
    if (!file.flush()) throw Error(ErrorCode::InvalidArgument, "write to '" + *spec.out_path + "' failed");
    return 0;
  } catch (const Error& e) {
    err << error_json(to_string(e.code()), e.what()).dump() << '\n';
  } catch (const std::exception& e) {
    err << error_json("InternalError", e.what()).dump() << '\n';
  }
  return 1;
}

}  // namespace vkerr
