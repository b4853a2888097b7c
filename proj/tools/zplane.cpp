// Command-line front end: every physics parameter comes from the config file,
// flags only choose where output goes and how many threads to use.

#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "zplane/commands.hpp"
#include "zplane/error.hpp"

namespace {

using Command = std::function<int(const zplane::RunConfig&, const zplane::CommandOptions&,
                                  std::ostream&, std::ostream&)>;

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonances from eigenvalue trajectories in the complex charge plane"};
  app.require_subcommand(1);

  const std::map<std::string, std::pair<std::string, Command>> commands{
      {"eigs", {"list the charge eigenvalues at one energy", zplane::cmd_eigs}},
      {"sweep", {"trace eigenvalue trajectories over an energy grid", zplane::cmd_sweep}},
      {"find", {"refine resonances from explicit guesses", zplane::cmd_find}},
      {"scan", {"search the Im E schedule for real-axis crossings", zplane::cmd_scan}},
      {"stability", {"refine and check stability over a lambda/theta/N grid", zplane::cmd_stability}},
      {"table", {"compare against the bundled published values", zplane::cmd_table}},
  };

  std::string config_path;
  std::string out_dir;
  zplane::CommandOptions opts;
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", config_path, "run configuration (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", opts.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--svg", opts.svg, "also write an SVG trajectory plot (sweep)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : zplane::exit_code::config_error;
  }
  opts.out_dir = out_dir;

  try {
    const auto config = zplane::load_config(config_path);
    for (const auto* sub : app.get_subcommands())
      return commands.at(sub->get_name()).second(config, opts, std::cout, std::cerr);
  } catch (const zplane::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return zplane::exit_code::config_error;
  } catch (const zplane::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return zplane::exit_code::solver_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return zplane::exit_code::solver_failure;
  }
  return zplane::exit_code::ok;
}
