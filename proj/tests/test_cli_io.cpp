#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "zplane/commands.hpp"
#include "zplane/config.hpp"
#include "zplane/error.hpp"
#include "zplane/output.hpp"

using namespace zplane;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("zplane_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ZPLANE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

const char* kHydrogen = R"({
  "potential": {"terms": []},
  "channel": {"l": 0, "n": 5, "lambda": 2, "theta": 0},
  "energy": [-0.5, 0]
})";

} // namespace

TEST_CASE("config round trip") {
  const auto full = parse_config_text(R"({
    "potential": {"terms": [{"c": 7.5, "p": 2, "b": 1, "s": 0, "q": 1},
                            {"c": -8, "b": 0.2, "q": 2}]},
    "channel": {"l": 2, "n": 120, "m": 160, "lambda": 15.5, "theta": 0.65},
    "energy": [3.0, -0.0128],
    "scan": {"re_start": 0, "re_end": 10, "steps": 101, "im_part": -3,
             "z_targets": [-8, -4, 9], "im_schedule": [-0.1, -3.2], "window": 0.25},
    "find": [{"z_target": 0, "guess": [3.4, -0.02]}],
    "stability": {"lambdas": [10, 20], "thetas": [0.5], "sizes": [150, 200], "tolerance": 1e-9},
    "table": {"sets": ["table1", "table2-spot"], "tolerance": 1e-6, "reference_file": "x.json"},
    "output": {"svg_window": [-10, 10, -5, 5]}
  })");
  CHECK(parse_config(to_json(full)) == full);
  CHECK(full.channel.quadrature_size() == 160);
  CHECK(full.find.at(0).guess == cplx(3.4, -0.02));

  const auto minimal = parse_config_text("{}");
  CHECK(parse_config(to_json(minimal)) == minimal);
  CHECK(minimal.channel == ChannelConfig{});
  CHECK(minimal.potential.empty());
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config_text("{"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"channel": {"lamda": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"channel": {"n": 2.5}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"channel": {"theta": 2}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"energy": [1]})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"scan": {"steps": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"find": [{"z_target": 0}]})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"stability": {"lambdas": [], "thetas": [0.7], "sizes": [10]}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"potential": {"terms": [{"c": 1, "q": 3}]}})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(-1.0) == "-1");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(round_significant(3.4263903101489123, 12) == 3.42639031015);
  CHECK(round_significant(0.0, 12) == 0.0);
}

TEST_CASE("eigs: hydrogen levels") {
  const auto cfg = parse_config_text(kHydrogen);
  std::ostringstream out, err;
  CHECK(cmd_eigs(cfg, {}, out, err) == exit_code::ok);
  CHECK(out.str() == "z_re,z_im\n-5,0\n-4,0\n-3,0\n-2,0\n-1,0\n");

  auto no_energy = cfg;
  no_energy.energy.reset();
  CHECK_THROWS_AS(cmd_eigs(no_energy, {}, out, err), ConfigError);
}

TEST_CASE("sweep: CSV row contract and deterministic SVG") {
  auto cfg = parse_config_text(R"({
    "potential": {"terms": [{"c": 7.5, "p": 2, "b": 1, "s": 0, "q": 1}]},
    "channel": {"l": 0, "n": 30},
    "scan": {"re_start": 1, "re_end": 6, "steps": 2, "im_part": -1}
  })");
  const auto dir = scratch_dir("sweep");
  CommandOptions opts{.out_dir = dir, .threads = 2, .svg = true};
  std::ostringstream out, err;
  CHECK(cmd_sweep(cfg, opts, out, err) == exit_code::ok);
  const auto csv = read_file(dir / "trajectories.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "branch_id,e_re,e_im,z_re,z_im");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 2 * 30);
  CHECK(csv.find('\r') == std::string::npos);

  const auto svg1 = read_file(dir / "trajectories.svg");
  CHECK(svg1.rfind("<svg", 0) == 0);
  CHECK(svg1.find("<polyline") != std::string::npos);
  CHECK(cmd_sweep(cfg, opts, out, err) == exit_code::ok);
  CHECK(read_file(dir / "trajectories.svg") == svg1);
  CHECK(read_file(dir / "trajectories.csv") == csv);
}

TEST_CASE("find and stability JSON records") {
  auto cfg = parse_config_text(R"({
    "potential": {"terms": [{"c": 7.5, "p": 2, "b": 1, "s": 0, "q": 1}]},
    "find": [{"z_target": 0, "guess": [3.4, -0.02]}],
    "stability": {"lambdas": [20], "thetas": [0.7], "sizes": [200]}
  })");
  std::ostringstream out, err;
  CHECK(cmd_stability(cfg, {}, out, err) == exit_code::ok);
  const auto j = nlohmann::json::parse(out.str());
  REQUIRE(j.size() == 1);
  const auto& rec = j[0];
  CHECK(rec.at("z_target") == 0.0);
  CHECK(rec.at("l") == 0);
  CHECK(rec.at("converged") == true);
  CHECK(std::abs(rec.at("e_r").get<double>() - 3.42639031) < 1e-8);
  CHECK(std::abs(rec.at("gamma").get<double>() - 0.025548961) < 1e-8);
  CHECK(rec.at("stability").at("max_deviation") == 0.0);
  CHECK(rec.at("stability").at("plateau") == true);
  CHECK(rec.at("stability").at("grid").size() == 1);
  // 12 significant digits
  CHECK(rec.at("e_r").get<double>() == round_significant(rec.at("e_r").get<double>(), 12));

  std::ostringstream out2;
  cfg.stability.reset();
  CHECK(cmd_find(cfg, {}, out2, err) == exit_code::ok);
  CHECK(nlohmann::json::parse(out2.str())[0].at("stability").is_null());
}

TEST_CASE("table: forced failure with zero tolerance") {
  auto cfg = parse_config_text(R"({"table": {"sets": ["fig3b"], "tolerance": 0}})");
  std::ostringstream out, err;
  CHECK(cmd_table(cfg, {}, out, err) == exit_code::tolerance_failure);
  CHECK(err.str().find("outside tolerance") != std::string::npos);

  cfg.table.sets = {"nonexistent"};
  CHECK_THROWS_AS(cmd_table(cfg, {}, out, err), ConfigError);
}

TEST_CASE("reference data") {
  const auto data = load_reference_data(default_reference_file());
  CHECK(data.select("table1").rows.size() == 6);
  const auto spot = data.select("table2-spot");
  CHECK(spot.rows.size() == 18);
  CHECK(spot.mode == ToleranceMode::LastDigit);
  CHECK(data.select("fig3b").rows.at(0).energy() == cplx(1.287274955, -2.971759279));
  CHECK(data.select("table1").rows.at(0).energy() == cplx(3.426390310, -0.0127744805));
  CHECK(last_digit_unit("5.064929608") == doctest::Approx(1e-9));
  CHECK(last_digit_unit("51") == 1.0);
  CHECK(last_digit_unit("-10.21") == doctest::Approx(1e-2));
  CHECK(last_digit_unit("9.57194e-5") == doctest::Approx(1e-10));
  CHECK(coarse_guess(cplx(3.426390310, -0.0127744805)) == cplx(3.43, -0.01));
}

TEST_CASE("CLI exit codes") {
  const auto dir = scratch_dir("cli");
  {
    std::ofstream(dir / "bad.json") << R"({"channel": {"n": "many"}})";
    std::ofstream(dir / "hydrogen.json") << kHydrogen;
    std::ofstream(dir / "tight.json") << R"({"table": {"sets": ["fig3b"], "tolerance": 0}})";
  }
  CHECK(run_cli("eigs --config " + (dir / "bad.json").string()) == exit_code::config_error);
  CHECK(run_cli("eigs --config " + (dir / "missing.json").string()) == exit_code::config_error);
  CHECK(run_cli("eigs") == exit_code::config_error);
  CHECK(run_cli("eigs --config " + (dir / "hydrogen.json").string() + " --out " +
                (dir / "out").string()) == exit_code::ok);
  CHECK(read_file(dir / "out" / "eigenvalues.csv") == "z_re,z_im\n-5,0\n-4,0\n-3,0\n-2,0\n-1,0\n");
  CHECK(run_cli("table --config " + (dir / "tight.json").string()) == exit_code::tolerance_failure);
}
