#pragma once

#include <complex>
#include <span>
#include <vector>

#include "zplane/potential.hpp"
#include "zplane/quadrature.hpp"

namespace zplane {

/// Uniform energy samples re_start..re_end (inclusive) at fixed Im E.
struct EnergyGrid {
  double re_start = 0.0;
  double re_end = 10.0;
  int steps = 201;
  double im_part = 0.0;

  void validate() const;
  std::vector<cplx> energies() const;

  friend bool operator==(const EnergyGrid&, const EnergyGrid&) = default;
};

struct TrajectoryPoint {
  cplx energy;
  cplx charge;
};

/// One continued eigenvalue branch Z_n(E) over a grid.
struct Trajectory {
  int branch_id = 0;
  std::vector<TrajectoryPoint> points;
  /// Indices i where the step points[i-1] -> points[i] exceeded the matching threshold.
  std::vector<std::size_t> discontinuities;
  /// Largest |Im Z| along the branch; ~0 marks bound-state coincidence with the real axis.
  double max_abs_imag = 0.0;
};

struct StepMatch {
  /// permutation[i] = index in `next` continuing prev[i].
  std::vector<std::size_t> permutation;
  /// flagged[i] is set when |next[permutation[i]] - prev[i]| > threshold.
  std::vector<bool> flagged;
  double threshold = 0.0;
};

/// Greedy global closest-pair assignment. threshold = factor * median pair distance.
StepMatch match_step(std::span<const cplx> prev, std::span<const cplx> next,
                     double threshold_factor = 5.0);

/// Eigenvalues at each grid sample, stitched into cfg.n branches. Branch ids
/// follow the sorted order at the first sample. Eigensolves run on up to
/// `threads` workers; matching is sequential, so output does not depend on it.
std::vector<Trajectory> sweep(const ChannelConfig& cfg, const PotentialModel& model,
                              const EnergyGrid& grid, int threads = 1);

/// Stitches precomputed eigenvalue sets (one per energy, any order) into branches.
std::vector<Trajectory> stitch(std::span<const cplx> energies,
                               const std::vector<std::vector<cplx>>& charge_sets);

} // namespace zplane
