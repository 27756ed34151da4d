#include "vkerr/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace vkerr {

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json number_or_null(const std::optional<double>& v) {
  return v ? number_or_null(*v) : Json(nullptr);
}

Json to_json(const Extremum& e) { return {{"axis", e.axis}, {"value", e.value}}; }

Json to_json(const std::optional<Extremum>& e) { return e ? to_json(*e) : Json(nullptr); }

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", value);
  return buf;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << "axis,re_chi1,im_chi1,re_chi3,im_chi3,ratio_31,ratio_33\n";
  for (const auto& row : result.rows) {
    out << format_number(row.axis);
    if (row.value) {
      const auto& v = *row.value;
      const auto optional_field = [](const std::optional<double>& r) {
        return r ? format_number(*r) : std::string();
      };
      out << ',' << format_number(v.re_chi1) << ',' << format_number(v.im_chi1) << ','
          << format_number(v.re_chi3) << ',' << format_number(v.im_chi3) << ','
          << optional_field(v.ratio_31()) << ',' << optional_field(v.ratio_33());
    } else {
      out << ",,,,,,";
    }
    out << '\n';
  }
}

Json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const SystemParams& params) {
  Json j = Json::object();
  for (const auto& name : param_names()) {
    if (name == "near_degenerate_approx") {
      j[name] = params.near_degenerate_approx;
      continue;
    }
    j[name] = number_or_null(get_param(params, name));
  }
  return j;
}

Json to_json(const RunMetadata& meta) {
  Json j;
  j["tool"] = "vkerr";
  j["version"] = VKERR_VERSION;
  j["mode"] = meta.mode;
  j["preset"] = meta.preset ? Json(*meta.preset) : Json(nullptr);
  j["params"] = to_json(meta.params);
  j["gamma12"] = {{"value", effective_gamma12(meta.params)},
                  {"source", std::string(gamma12_source(meta.params))}};
  j["regime_advisory"] = regime_advisory(meta.params);
  if (meta.timestamp) j["timestamp"] = *meta.timestamp;
  return j;
}

Json to_json(const Susceptibility& v) {
  return {{"re_chi1", v.re_chi1},
          {"im_chi1", v.im_chi1},
          {"re_chi3", v.re_chi3},
          {"im_chi3", v.im_chi3},
          {"ratio_31", number_or_null(v.ratio_31())},
          {"ratio_33", number_or_null(v.ratio_33())}};
}

Json to_json(const SweepResult& result) {
  Json rows = Json::array();
  for (const auto& row : result.rows) {
    Json r = {{"axis", row.axis}};
    if (row.value) {
      const Json values = to_json(*row.value);
      for (const auto& [k, v] : values.items()) r[k] = v;
    } else {
      r["error"] = row.error;
    }
    rows.push_back(std::move(r));
  }
  return {{"axis_name", result.axis_name}, {"rows", std::move(rows)}};
}

Json to_json(const CoefficientSet& k) {
  const auto& b = k.basis;
  const auto& B = k.response;
  const auto& x = k.x;
  const auto& r = k.rates;
  return {
      {"basis",
       {{"c", b.c}, {"s", b.s}, {"omega_R", b.omega_R}, {"lambda_plus", b.lambda_plus},
        {"lambda_minus", b.lambda_minus}, {"lambda_1", b.lambda_1}}},
      {"cavity_response",
       {{"B0", to_json(B.B0)}, {"B1", to_json(B.B1)}, {"B2", to_json(B.B2)},
        {"B3", to_json(B.B3)}, {"B4", to_json(B.B4)}}},
      {"interference",
       {{"x1", to_json(x.x1)}, {"x2", to_json(x.x2)}, {"x3", to_json(x.x3)}, {"x4", to_json(x.x4)}}},
      {"rates",
       {{"R_plus_minus", r.R_plus_minus}, {"R_minus_plus", r.R_minus_plus},
        {"R_1_minus", r.R_1_minus}, {"R_1_plus", r.R_1_plus},
        {"Gamma0", to_json(r.Gamma0)}, {"Gamma_minus", to_json(r.Gamma_minus)},
        {"Gamma_plus", to_json(r.Gamma_plus)}, {"Gamma1", to_json(r.Gamma1)},
        {"Gamma2", to_json(r.Gamma2)}, {"Gamma3", to_json(r.Gamma3)},
        {"Gamma_1plus", to_json(r.Gamma_1plus)}}},
      {"gamma12", k.gamma12},
  };
}

Json to_json(const SteadyState0& s) {
  return {{"rho_11", s.rho_11}, {"rho_pp", s.rho_pp}, {"rho_mm", s.rho_mm}, {"rho_m1", to_json(s.rho_m1)}};
}

Json to_json(const FeatureReport& rep) {
  Json extrema = Json::array();
  for (const auto& e : rep.re_chi3_extrema) extrema.push_back(to_json(e));
  return {{"im_chi3_zeros", rep.im_chi3_zeros},
          {"re_chi3_extrema", std::move(extrema)},
          {"re_chi3_peak", to_json(rep.re_chi3_peak)},
          {"transparency_points", rep.transparency_points},
          {"transparency_threshold", rep.transparency_threshold},
          {"ratio_31_peak", to_json(rep.ratio_31_peak)},
          {"ratio_33_peak", to_json(rep.ratio_33_peak)},
          {"empty", rep.empty()}};
}

Json error_json(std::string_view code, std::string_view message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace vkerr
