#include "zplane/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "zplane/eigensolver.hpp"
#include "zplane/error.hpp"
#include "zplane/hamiltonian.hpp"
#include "zplane/parallel.hpp"

namespace zplane {

std::vector<CrossingCandidate> detect_crossings(const std::vector<Trajectory>& trajectories,
                                                const std::vector<double>& z_targets,
                                                double window) {
  if (!(window > 0.0)) throw ConfigError("crossing window must be positive");
  std::vector<CrossingCandidate> out;
  for (const auto& branch : trajectories) {
    for (std::size_t i = 0; i + 1 < branch.points.size(); ++i) {
      const auto& a = branch.points[i];
      const auto& b = branch.points[i + 1];
      if (!(a.charge.imag() * b.charge.imag() < 0.0)) continue;
      const double t = a.charge.imag() / (a.charge.imag() - b.charge.imag());
      const double z_cross = a.charge.real() + t * (b.charge.real() - a.charge.real());
      for (double target : z_targets) {
        if (std::abs(z_cross - target) > window) continue;
        out.push_back({.branch_id = branch.branch_id,
                       .e_lo = a.energy,
                       .e_hi = b.energy,
                       .z_at_crossing = z_cross,
                       .z_target = target,
                       .e_estimate = a.energy + t * (b.energy - a.energy)});
      }
    }
  }
  return out;
}

namespace {

struct Selection {
  cplx charge;
  Eigen::MatrixXcd matrix;
};

Selection select_nearest(const ChargeOperator& op, cplx energy, double target,
                         const RefineOptions& options) {
  Selection sel;
  sel.matrix = op.at(energy);
  const auto values = eigenvalues(sel.matrix);
  const cplx z_target(target, 0.0);
  std::size_t best = 0;
  std::size_t second = values.size();
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (std::abs(values[k] - z_target) < std::abs(values[best] - z_target)) {
      second = best;
      best = k;
    } else if (second == values.size() ||
               std::abs(values[k] - z_target) < std::abs(values[second] - z_target)) {
      second = k;
    }
  }
  if (second < values.size()) {
    const double d1 = std::abs(values[best] - z_target);
    const double d2 = std::abs(values[second] - z_target);
    if (d2 - d1 <= options.ambiguity_tol && d1 > options.residual_tol &&
        std::abs(values[best] - values[second]) > options.ambiguity_tol) {
      std::ostringstream msg;
      msg << "two eigenvalues are equidistant from Z = " << target << " at E = (" << energy.real()
          << ", " << energy.imag() << "); refine the energy grid or perturb the guess";
      throw SolverError(msg.str());
    }
  }
  sel.charge = values[best];
  return sel;
}

} // namespace

Resonance refine_resonance(cplx guess, double z_target, const ChannelConfig& cfg,
                           const PotentialModel& model, const RefineOptions& options) {
  cfg.validate();
  const ChargeOperator op(cfg, model);

  Resonance res;
  res.z_target = z_target;
  res.l = cfg.l;

  cplx energy = guess;
  Selection sel = select_nearest(op, energy, z_target, options);
  double residual = std::abs(sel.charge - z_target);
  std::optional<std::pair<cplx, cplx>> previous; // (E, Z) of the last accepted iterate

  auto slope_at = [&](const Selection& at, cplx e) {
    try {
      const Eigen::VectorXcd x = eigenvector_near(at.matrix, at.charge);
      return eigenvalue_derivative(op.energy_derivative(), x);
    } catch (const DerivativeError&) {
      if (previous && previous->first != e) return (at.charge - previous->second) / (e - previous->first);
      const double h = 1e-6 * std::max(1.0, std::abs(e));
      const Selection shifted = select_nearest(op, e + h, z_target, options);
      return (shifted.charge - at.charge) / h;
    }
  };
  auto usable = [](cplx slope) { return slope != cplx(0.0) && std::isfinite(std::abs(slope)); };

  bool step_converged = false;
  int iter = 0;
  for (; iter < options.max_iterations && residual > options.residual_tol; ++iter) {
    const cplx slope = slope_at(sel, energy);
    if (!usable(slope)) break;

    cplx step = (z_target - sel.charge) / slope;
    Selection trial = select_nearest(op, energy + step, z_target, options);
    double trial_residual = std::abs(trial.charge - z_target);
    for (int halving = 0; halving < 10 && trial_residual > residual; ++halving) {
      step *= 0.5;
      trial = select_nearest(op, energy + step, z_target, options);
      trial_residual = std::abs(trial.charge - z_target);
    }
    previous.emplace(energy, sel.charge);
    energy += step;
    sel = std::move(trial);
    residual = trial_residual;
    if (std::abs(step) <= options.step_tol) {
      step_converged = true;
      ++iter;
      break;
    }
  }

  // One more Newton step once inside the residual tolerance, so the result is
  // the root for these parameters rather than wherever the tolerance was met.
  if (residual <= options.residual_tol && residual > 0.0 && iter < options.max_iterations) {
    const cplx slope = slope_at(sel, energy);
    if (usable(slope)) {
      const cplx step = (z_target - sel.charge) / slope;
      Selection trial = select_nearest(op, energy + step, z_target, options);
      const double trial_residual = std::abs(trial.charge - z_target);
      if (trial_residual <= residual) {
        energy += step;
        residual = trial_residual;
        ++iter;
      }
    }
  }

  res.energy = energy;
  res.iterations = iter;
  res.residual = residual;
  res.converged = residual <= options.residual_tol || step_converged;
  return res;
}

void StabilityGrid::validate() const {
  if (lambdas.empty() || thetas.empty() || sizes.empty())
    throw ConfigError("stability grid needs at least one lambda, theta and size");
  if (!(tolerance >= 0.0)) throw ConfigError("stability tolerance must be non-negative");
}

StabilityGrid default_stability_grid(const ChannelConfig& cfg) {
  StabilityGrid grid;
  grid.lambdas = {0.5 * cfg.lambda, cfg.lambda, 2.0 * cfg.lambda};
  for (double t : {cfg.theta - 0.2, cfg.theta, cfg.theta + 0.2}) {
    if (t > 0.0 && t < std::numbers::pi / 2) grid.thetas.push_back(t);
  }
  grid.sizes = {cfg.n};
  return grid;
}

StabilityReport stability_scan(const Resonance& res, const StabilityGrid& grid,
                               const ChannelConfig& base, const PotentialModel& model,
                               int threads) {
  grid.validate();
  if (!res.converged) throw SolverError("stability scan needs a converged resonance");

  std::vector<ChannelConfig> settings;
  for (int n : grid.sizes)
    for (double lambda : grid.lambdas)
      for (double theta : grid.thetas) {
        ChannelConfig cfg = base;
        cfg.l = res.l;
        cfg.n = n;
        cfg.lambda = lambda;
        cfg.theta = theta;
        if (cfg.m != 0) cfg.m = std::max(base.m, n);
        cfg.validate();
        settings.push_back(cfg);
      }

  StabilityReport report;
  report.grid.resize(settings.size());
  std::vector<std::string> errors(settings.size());
  parallel_for(settings.size(), threads, [&](std::size_t i) {
    const auto& cfg = settings[i];
    auto& point = report.grid[i];
    point.lambda = cfg.lambda;
    point.theta = cfg.theta;
    point.n = cfg.n;
    try {
      const Resonance r = refine_resonance(res.energy, res.z_target, cfg, model);
      point.energy = r.energy;
      point.converged = r.converged;
      if (!r.converged) errors[i] = "no convergence";
    } catch (const SolverError& e) {
      point.energy = res.energy;
      point.converged = false;
      errors[i] = e.what();
    }
  });

  bool all_converged = true;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    if (errors[i].empty()) continue;
    all_converged = false;
    std::ostringstream msg;
    msg << "lambda=" << settings[i].lambda << " theta=" << settings[i].theta
        << " n=" << settings[i].n << ": " << errors[i];
    report.failures.push_back(msg.str());
  }
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    if (!report.grid[i].converged) continue;
    for (std::size_t j = i + 1; j < report.grid.size(); ++j) {
      if (!report.grid[j].converged) continue;
      report.max_deviation =
          std::max(report.max_deviation, std::abs(report.grid[i].energy - report.grid[j].energy));
    }
  }
  report.plateau = all_converged && report.max_deviation <= grid.tolerance;
  return report;
}

void sort_resonances(std::vector<Resonance>& list) {
  std::stable_sort(list.begin(), list.end(), [](const Resonance& a, const Resonance& b) {
    if (a.z_target != b.z_target) return a.z_target < b.z_target;
    if (a.position() != b.position()) return a.position() < b.position();
    return a.energy.imag() > b.energy.imag();
  });
}

SearchResult auto_search(const ChannelConfig& cfg, const PotentialModel& model,
                         const SearchSpec& spec, int threads) {
  cfg.validate();
  SearchResult result;
  if (spec.z_targets.empty()) return result;
  if (spec.im_schedule.empty()) throw ConfigError("search needs a non-empty Im E schedule");

  std::vector<CrossingCandidate> candidates;
  for (double im : spec.im_schedule) {
    const EnergyGrid grid{
        .re_start = spec.re_start, .re_end = spec.re_end, .steps = spec.steps, .im_part = im};
    const auto branches = sweep(cfg, model, grid, threads);
    auto found = detect_crossings(branches, spec.z_targets, spec.window);
    candidates.insert(candidates.end(), found.begin(), found.end());
  }

  std::vector<Resonance> refined(candidates.size());
  std::vector<std::string> errors(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    try {
      refined[i] = refine_resonance(candidates[i].e_estimate, candidates[i].z_target, cfg, model);
    } catch (const SolverError& e) {
      errors[i] = e.what();
    }
  });

  std::vector<Resonance> unique;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::ostringstream where;
    where << "candidate Z=" << candidates[i].z_target << " from E=(" << candidates[i].e_estimate.real()
          << ", " << candidates[i].e_estimate.imag() << ")";
    if (!errors[i].empty()) {
      result.failures.push_back(where.str() + ": " + errors[i]);
      continue;
    }
    const Resonance& r = refined[i];
    if (!r.converged) {
      result.failures.push_back(where.str() + ": no convergence");
      continue;
    }
    if (r.energy.imag() > spec.dedup_tol) {
      result.failures.push_back(where.str() + ": converged to Im E > 0");
      continue;
    }
    const bool duplicate = std::any_of(unique.begin(), unique.end(), [&](const Resonance& u) {
      return u.z_target == r.z_target && std::abs(u.energy - r.energy) <= spec.dedup_tol;
    });
    if (!duplicate) unique.push_back(r);
  }
  sort_resonances(unique);

  if (spec.run_stability) {
    const StabilityGrid grid = spec.stability ? *spec.stability : default_stability_grid(cfg);
    for (auto& r : unique) r.stability = stability_scan(r, grid, cfg, model, threads);
  }
  result.resonances = std::move(unique);
  return result;
}

} // namespace zplane
