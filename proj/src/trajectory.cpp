#include "zplane/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>

#include "zplane/eigensolver.hpp"
#include "zplane/error.hpp"
#include "zplane/hamiltonian.hpp"
#include "zplane/parallel.hpp"

namespace zplane {

void EnergyGrid::validate() const {
  if (!std::isfinite(re_start) || !std::isfinite(re_end) || !std::isfinite(im_part))
    throw ConfigError("energy grid bounds must be finite");
  if (!(re_start < re_end)) throw ConfigError("energy grid needs re_start < re_end");
  if (steps < 2) throw ConfigError("energy grid needs at least 2 steps");
}

std::vector<cplx> EnergyGrid::energies() const {
  validate();
  std::vector<cplx> out(steps);
  const double span = re_end - re_start;
  for (int i = 0; i < steps; ++i) {
    // i/(steps-1) keeps endpoints exact and makes a doubled grid reuse every
    // old sample bit-for-bit when (steps-1) doubles.
    const double t = static_cast<double>(i) / (steps - 1);
    out[i] = cplx(i + 1 == steps ? re_end : re_start + t * span, im_part);
  }
  return out;
}

StepMatch match_step(std::span<const cplx> prev, std::span<const cplx> next,
                     double threshold_factor) {
  if (prev.size() != next.size())
    throw SolverError("match_step needs eigenvalue lists of equal length");
  const std::size_t n = prev.size();

  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(std::abs(prev[i] - next[j]), i, j);
  std::sort(pairs.begin(), pairs.end());

  StepMatch match;
  match.permutation.assign(n, n);
  std::vector<bool> next_used(n, false);
  std::vector<double> distance(n, 0.0);
  std::size_t assigned = 0;
  for (const auto& [d, i, j] : pairs) {
    if (assigned == n) break;
    if (match.permutation[i] != n || next_used[j]) continue;
    match.permutation[i] = j;
    next_used[j] = true;
    distance[i] = d;
    ++assigned;
  }

  match.flagged.assign(n, false);
  if (n > 0) {
    std::vector<double> sorted = distance;
    std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
    double median = sorted[n / 2];
    if (n % 2 == 0) {
      const double lower = *std::max_element(sorted.begin(), sorted.begin() + n / 2);
      median = 0.5 * (median + lower);
    }
    match.threshold = threshold_factor * median;
    for (std::size_t i = 0; i < n; ++i) match.flagged[i] = distance[i] > match.threshold;
  }
  return match;
}

std::vector<Trajectory> stitch(std::span<const cplx> energies,
                               const std::vector<std::vector<cplx>>& charge_sets) {
  if (energies.size() != charge_sets.size() || energies.empty())
    throw SolverError("stitch needs one eigenvalue set per energy");
  const std::size_t n = charge_sets.front().size();

  std::vector<Trajectory> branches(n);
  std::vector<cplx> current = charge_sets.front();
  std::sort(current.begin(), current.end(), charge_less);
  for (std::size_t b = 0; b < n; ++b) {
    branches[b].branch_id = static_cast<int>(b);
    branches[b].points.reserve(energies.size());
    branches[b].points.push_back({energies[0], current[b]});
  }
  for (std::size_t s = 1; s < energies.size(); ++s) {
    const auto& next = charge_sets[s];
    const StepMatch match = match_step(current, next);
    for (std::size_t b = 0; b < n; ++b) {
      current[b] = next[match.permutation[b]];
      branches[b].points.push_back({energies[s], current[b]});
      if (match.flagged[b]) branches[b].discontinuities.push_back(s);
    }
  }
  for (auto& br : branches) {
    for (const auto& p : br.points)
      br.max_abs_imag = std::max(br.max_abs_imag, std::abs(p.charge.imag()));
  }
  return branches;
}

std::vector<Trajectory> sweep(const ChannelConfig& cfg, const PotentialModel& model,
                              const EnergyGrid& grid, int threads) {
  cfg.validate();
  const auto energies = grid.energies();
  const ChargeOperator op(cfg, model);

  std::vector<std::vector<cplx>> sets(energies.size());
  parallel_for(energies.size(), threads, [&](std::size_t i) {
    try {
      sets[i] = eigenvalues(op.at(energies[i]));
    } catch (const SolverError& e) {
      std::ostringstream msg;
      msg << e.what() << " (at E = " << energies[i].real() << " " << energies[i].imag() << "i)";
      throw SolverError(msg.str());
    }
  });
  return stitch(energies, sets);
}

} // namespace zplane
