#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "zplane/potential.hpp"
#include "zplane/quadrature.hpp"
#include "zplane/trajectory.hpp"

namespace zplane {

/// A branch crossing the real Z axis between two grid samples, close to a target charge.
struct CrossingCandidate {
  int branch_id = 0;
  cplx e_lo;
  cplx e_hi;
  double z_at_crossing = 0.0;
  double z_target = 0.0;
  /// Energy linearly interpolated to the crossing; the Newton starting point.
  cplx e_estimate;
};

struct StabilityPoint {
  double lambda = 0.0;
  double theta = 0.0;
  int n = 0;
  cplx energy;
  bool converged = false;
};

struct StabilityReport {
  std::vector<StabilityPoint> grid;
  double max_deviation = 0.0; // max pairwise |dE| over converged points
  bool plateau = false;
  std::vector<std::string> failures;
};

struct Resonance {
  double z_target = 0.0;
  int l = 0;
  cplx energy;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0; // |Z_sel(E) - Z_target| at the final iterate
  std::optional<StabilityReport> stability;

  double position() const { return energy.real(); }
  double width() const { return -2.0 * energy.imag(); }
};

struct RefineOptions {
  double residual_tol = 1e-10;
  double step_tol = 1e-13;
  int max_iterations = 50;
  /// Two eigenvalues closer than this in distance to the target make the
  /// selection ambiguous.
  double ambiguity_tol = 1e-9;
};

/// Detects sign changes of Im Z along each branch and keeps those whose
/// interpolated real-axis crossing lies within `window` of a target.
std::vector<CrossingCandidate> detect_crossings(const std::vector<Trajectory>& trajectories,
                                                const std::vector<double>& z_targets,
                                                double window = 0.5);

/// Newton iteration in complex E on the eigenvalue nearest z_target, with
/// step halving on residual growth and a secant fallback when the analytic
/// derivative is unusable. Non-convergence is reported via `converged`.
/// Throws SolverError when the nearest eigenvalue is ambiguous.
Resonance refine_resonance(cplx guess, double z_target, const ChannelConfig& cfg,
                           const PotentialModel& model, const RefineOptions& options = {});

struct StabilityGrid {
  std::vector<double> lambdas;
  std::vector<double> thetas;
  std::vector<int> sizes;
  double tolerance = 1e-8;

  void validate() const;
  friend bool operator==(const StabilityGrid&, const StabilityGrid&) = default;
};

/// lambda in {l/2, l, 2l}, theta in {t - 0.2, t, t + 0.2} (kept inside (0, pi/2)),
/// N = cfg.n. At the default channel this is the 3x3 grid 10..40 x 0.5..0.9.
StabilityGrid default_stability_grid(const ChannelConfig& cfg);

StabilityReport stability_scan(const Resonance& res, const StabilityGrid& grid,
                               const ChannelConfig& base, const PotentialModel& model,
                               int threads = 1);

struct SearchSpec {
  std::vector<double> z_targets;
  std::vector<double> im_schedule{-0.025, -0.1, -0.4, -1.6, -3.2, -6.4, -12.8, -25.6};
  double re_start = 0.0;
  double re_end = 10.0;
  int steps = 201;
  double window = 0.5;
  double dedup_tol = 1e-6;
  std::optional<StabilityGrid> stability; // default_stability_grid when absent
  bool run_stability = true;
};

struct SearchResult {
  std::vector<Resonance> resonances; // ordered by (z_target, position)
  std::vector<std::string> failures;
};

SearchResult auto_search(const ChannelConfig& cfg, const PotentialModel& model,
                         const SearchSpec& spec, int threads = 1);

/// Orders resonances by target charge, then position.
void sort_resonances(std::vector<Resonance>& list);

} // namespace zplane
