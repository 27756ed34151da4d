#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "vkerr/cli.hpp"
#include "vkerr/error.hpp"
#include "vkerr/io.hpp"
#include "vkerr/presets.hpp"

using namespace vkerr;

namespace {

std::string run_to_string(const RunSpec& spec) {
  std::ostringstream out;
  run(spec, out);
  return out.str();
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("presets resolve to their parameter sets") {
  CHECK(presets().size() == 8);
  CHECK(find_preset("fig2a").params.delta_c == 0.0);
  CHECK(find_preset("fig2b").params.delta_c == 50.0);
  const SystemParams c = find_preset("fig2c").params;
  CHECK(c.kappa == 100.0);
  CHECK(c.g1 == 5.0);
  CHECK(c.g2 == 15.0);
  CHECK(c.gamma1 == 0.1);
  CHECK(c.gamma2 == 0.1);
  CHECK(c.omega21 == 200.0);
  CHECK(c.omega_L_rabi == 200.0);
  CHECK(c.delta_c == 200.0);
  CHECK(find_preset("fig3a").params.omega21 == 250.0);
  CHECK(find_preset("fig3b").params.omega21 == 200.0);
  CHECK(find_preset("fig4a").params.gamma1 == 0.001);
  const Preset& f4b = find_preset("fig4b");
  CHECK(f4b.axis == "g1");
  CHECK(f4b.omega == 200.122);
  CHECK(find_preset("fig5").params.kappa == 200.0);
  CHECK_THROWS_AS(find_preset("fig9"), Error);
}

TEST_CASE("figure-preset output equals the direct sweep") {
  RunSpec spec;
  spec.mode = Mode::FigurePreset;
  spec.preset = "fig2c";
  const std::string csv = run_to_string(spec);

  std::ostringstream direct;
  write_csv(direct, sweep(find_preset("fig2c").params, ProbeGrid::uniform(190.0, 210.0, 0.005)));
  CHECK(csv == direct.str());
  CHECK(csv.rfind("axis,re_chi1,im_chi1,re_chi3,im_chi3,ratio_31,ratio_33\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4002);
}

TEST_CASE("runs are byte-identical") {
  RunSpec spec;
  spec.mode = Mode::Sweep;
  spec.preset = "fig5";
  spec.start = 199.0;
  spec.stop = 201.0;
  spec.step = 0.01;
  spec.format = "json";
  CHECK(run_to_string(spec) == run_to_string(spec));
  spec.threads = 1;
  const std::string serial = run_to_string(spec);
  spec.threads = 3;
  CHECK(serial == run_to_string(spec));
}

TEST_CASE("point evaluation from a config file") {
  const auto cfg = temp_file("vkerr_fig4.cfg", "gamma1 = 0.001\ndelta_c = 200\n");
  RunSpec spec;
  spec.mode = Mode::Point;
  spec.config_path = cfg.string();
  spec.omega = 200.122;
  spec.timestamp = "2026-01-01T00:00:00Z";
  const auto j = nlohmann::json::parse(run_to_string(spec));
  for (const char* key : {"re_chi1", "im_chi1", "re_chi3", "im_chi3"}) CHECK(std::isfinite(j["chi"][key].get<double>()));
  CHECK(j["metadata"]["params"]["gamma1"] == 0.001);
  CHECK(j["metadata"]["gamma12"]["source"] == "default");
  CHECK(j["metadata"]["timestamp"] == "2026-01-01T00:00:00Z");
  std::filesystem::remove(cfg);
}

TEST_CASE("gamma12 flag overrides the config") {
  RunSpec spec;
  spec.mode = Mode::Coefficients;
  spec.gamma12 = 0.05;
  const auto j = nlohmann::json::parse(run_to_string(spec));
  CHECK(j["coefficients"]["gamma12"] == 0.05);
  CHECK(j["metadata"]["gamma12"]["source"] == "override");
}

TEST_CASE("oracle comparison report") {
  RunSpec spec;
  spec.mode = Mode::OracleCompare;
  spec.preset = "fig2c";
  const auto j = nlohmann::json::parse(run_to_string(spec));
  CHECK(j["max_abs_delta"].get<double>() < 4e-3);
  CHECK(j["lindblad"]["n_max"] == 4);
  CHECK_FALSE(j.contains("time_domain"));
}

TEST_CASE("parameter sweep and features") {
  RunSpec spec;
  spec.mode = Mode::Features;
  spec.preset = "fig4b";
  const auto j = nlohmann::json::parse(run_to_string(spec));
  CHECK(j["axis_name"] == "g1");
  bool near_five = false;
  for (double z : j["features"]["im_chi3_zeros"]) near_five = near_five || std::abs(z - 5.0) < 0.2;
  CHECK(near_five);
}

TEST_CASE("errors become JSON on stderr") {
  RunSpec spec;
  spec.mode = Mode::FigurePreset;
  spec.preset = "nope";
  std::ostringstream out, err;
  CHECK(run_reporting(spec, out, err) == 1);
  const auto j = nlohmann::json::parse(err.str());
  CHECK(j["error"]["code"] == "InvalidArgument");
  CHECK(out.str().empty());

  RunSpec point;
  point.mode = Mode::Point;  // no omega
  std::ostringstream o2, e2;
  CHECK(run_reporting(point, o2, e2) == 1);

  RunSpec bad_axis;
  bad_axis.mode = Mode::Sweep;
  bad_axis.axis = "colour";
  bad_axis.start = 0.0;
  bad_axis.stop = 1.0;
  bad_axis.step = 0.5;
  bad_axis.omega = 200.0;
  std::ostringstream o3, e3;
  CHECK(run_reporting(bad_axis, o3, e3) == 1);
}

TEST_CASE("modes parse by name") {
  CHECK(parse_mode("oracle-compare") == Mode::OracleCompare);
  CHECK(to_string(parse_mode("figure-preset")) == "figure-preset");
  CHECK_THROWS_AS(parse_mode("plot"), Error);
}

TEST_CASE("csv marks failed rows with empty fields") {
  SweepResult r{"gamma1", {SweepRow{-1.0, std::nullopt, "InvalidParams"}}};
  std::ostringstream out;
  write_csv(out, r);
  CHECK(out.str() == "axis,re_chi1,im_chi1,re_chi3,im_chi3,ratio_31,ratio_33\n-1.00000000e+00,,,,,,\n");
  CHECK(format_number(200.122) == "2.00122000e+02");
}
