#include "zplane/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "zplane/eigensolver.hpp"
#include "zplane/error.hpp"
#include "zplane/hamiltonian.hpp"
#include "zplane/output.hpp"
#include "zplane/parallel.hpp"
#include "zplane/trajectory.hpp"

namespace zplane {

namespace {

void write_file(const CommandOptions& opts, const std::string& name, const std::string& content) {
  if (opts.out_dir.empty()) return;
  std::filesystem::create_directories(opts.out_dir);
  const auto path = opts.out_dir / name;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + path.string());
  file << content;
}

void emit_resonances(const std::vector<Resonance>& list, const CommandOptions& opts,
                     std::ostream& out) {
  const std::string text = to_json(list).dump(2) + "\n";
  out << text;
  write_file(opts, "resonances.json", text);
}

std::vector<Resonance> refine_requests(const RunConfig& config, int threads) {
  if (config.find.empty()) throw ConfigError("this command needs a non-empty 'find' section");
  std::vector<Resonance> out(config.find.size());
  parallel_for(out.size(), threads, [&](std::size_t i) {
    out[i] = refine_resonance(config.find[i].guess, config.find[i].z_target, config.channel,
                              config.potential);
  });
  return out;
}

double round_to(double x, double unit) { return std::round(x / unit) * unit; }

} // namespace

int cmd_eigs(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
             std::ostream& /*err*/) {
  if (!config.energy) throw ConfigError("eigs needs an 'energy' entry [re, im]");
  const ChargeOperator op(config.channel, config.potential);
  const auto values = eigenvalues(op.at(*config.energy));
  std::ostringstream csv;
  write_eigenvalue_csv(csv, values);
  out << csv.str();
  write_file(opts, "eigenvalues.csv", csv.str());
  return exit_code::ok;
}

int cmd_sweep(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
              std::ostream& err) {
  const auto branches = sweep(config.channel, config.potential, config.scan.grid, opts.threads);
  std::ostringstream csv;
  write_trajectory_csv(csv, branches);
  if (opts.out_dir.empty()) {
    out << csv.str();
  } else {
    write_file(opts, "trajectories.csv", csv.str());
  }
  if (opts.svg) {
    std::ostringstream svg;
    write_trajectory_svg(svg, branches, config.output.svg_window);
    if (opts.out_dir.empty()) {
      err << "--svg needs --out; plot not written\n";
    } else {
      write_file(opts, "trajectories.svg", svg.str());
    }
  }
  if (!config.scan.z_targets.empty()) {
    for (const auto& c : detect_crossings(branches, config.scan.z_targets, config.scan.window)) {
      err << "crossing branch=" << c.branch_id << " z=" << format_number(c.z_at_crossing, 8)
          << " target=" << format_number(c.z_target) << " e=(" << format_number(c.e_estimate.real(), 8)
          << ", " << format_number(c.e_estimate.imag(), 8) << ")\n";
    }
  }
  return exit_code::ok;
}

int cmd_find(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
             std::ostream& /*err*/) {
  auto list = refine_requests(config, opts.threads);
  if (config.stability) {
    for (auto& r : list)
      if (r.converged)
        r.stability = stability_scan(r, *config.stability, config.channel, config.potential,
                                     opts.threads);
  }
  sort_resonances(list);
  emit_resonances(list, opts, out);
  return exit_code::ok;
}

int cmd_scan(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
             std::ostream& err) {
  SearchSpec spec;
  spec.z_targets = config.scan.z_targets;
  spec.im_schedule = config.scan.im_schedule;
  spec.re_start = config.scan.grid.re_start;
  spec.re_end = config.scan.grid.re_end;
  spec.steps = config.scan.grid.steps;
  spec.window = config.scan.window;
  spec.stability = config.stability;
  const SearchResult result = auto_search(config.channel, config.potential, spec, opts.threads);
  for (const auto& f : result.failures) err << "skipped " << f << '\n';
  emit_resonances(result.resonances, opts, out);
  return exit_code::ok;
}

int cmd_stability(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
                  std::ostream& /*err*/) {
  const StabilityGrid grid =
      config.stability ? *config.stability : default_stability_grid(config.channel);
  auto list = refine_requests(config, opts.threads);
  for (auto& r : list)
    if (r.converged)
      r.stability = stability_scan(r, grid, config.channel, config.potential, opts.threads);
  sort_resonances(list);
  emit_resonances(list, opts, out);
  return exit_code::ok;
}

cplx coarse_guess(cplx energy) {
  return {round_to(energy.real(), 0.01), round_to(energy.imag(), 0.01)};
}

std::vector<TableRowResult> evaluate_reference_set(const ReferenceSet& set,
                                                   const ChannelConfig& base,
                                                   std::optional<double> absolute_tolerance,
                                                   int threads) {
  std::vector<TableRowResult> results(set.rows.size());
  parallel_for(results.size(), threads, [&](std::size_t i) {
    const ReferenceRow& row = set.rows[i];
    TableRowResult& r = results[i];
    r.reference = row;
    ChannelConfig cfg = base;
    cfg.l = row.l;
    const cplx expected = row.energy();
    try {
      r.computed = refine_resonance(coarse_guess(expected), row.z_target, cfg, set.potential);
    } catch (const SolverError&) {
      r.computed.z_target = row.z_target;
      r.computed.l = row.l;
      r.computed.energy = coarse_guess(expected);
      r.computed.converged = false;
    }
    const cplx got = r.computed.energy;
    r.position_error = std::abs(got.real() - expected.real());
    r.second_error = row.imag ? std::abs(got.imag() - expected.imag())
                              : std::abs(r.computed.width() - (-2.0 * expected.imag()));
    if (absolute_tolerance) {
      r.position_allowed = r.second_allowed = *absolute_tolerance;
    } else if (set.mode == ToleranceMode::Absolute) {
      r.position_allowed = r.second_allowed = set.tolerance;
    } else {
      r.position_allowed = set.tolerance * last_digit_unit(row.position);
      r.second_allowed = set.tolerance * last_digit_unit(row.imag ? *row.imag : *row.width);
    }
    r.pass = r.computed.converged && r.position_error <= r.position_allowed &&
             r.second_error <= r.second_allowed;
  });
  return results;
}

int cmd_table(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
              std::ostream& err) {
  const auto path = config.table.reference_file.empty()
                        ? default_reference_file()
                        : std::filesystem::path(config.table.reference_file);
  const ReferenceData data = load_reference_data(path);

  std::ostringstream report;
  std::vector<std::string> failing;
  char line[512];
  for (const auto& name : config.table.sets) {
    const ReferenceSet set = data.select(name);
    report << "# " << set.name << ": " << set.description << '\n';
    std::snprintf(line, sizeof line, "%5s %2s %16s %16s %10s %16s %16s %10s  %s\n", "Z", "l",
                  "E_r ref", "E_r calc", "|dE_r|", "Gamma/ImE ref", "calc", "|d|", "status");
    report << line;
    const auto results =
        evaluate_reference_set(set, config.channel, config.table.tolerance, opts.threads);
    for (const auto& r : results) {
      const auto& ref = r.reference;
      const double second = ref.imag ? r.computed.energy.imag() : r.computed.width();
      std::snprintf(line, sizeof line, "%5g %2d %16s %16.10f %10.2e %16s %16.10f %10.2e  %s\n",
                    ref.z_target, ref.l, ref.position.c_str(), r.computed.position(),
                    r.position_error, (ref.imag ? *ref.imag : *ref.width).c_str(), second,
                    r.second_error, r.pass ? "ok" : "FAIL");
      report << line;
      if (!r.pass) failing.push_back(set.name + ": " + ref.citation);
    }
    report << '\n';
  }
  out << report.str();
  write_file(opts, "table.txt", report.str());
  if (!failing.empty()) {
    err << failing.size() << " row(s) outside tolerance:\n";
    for (const auto& f : failing) err << "  " << f << '\n';
    return exit_code::tolerance_failure;
  }
  return exit_code::ok;
}

} // namespace zplane
