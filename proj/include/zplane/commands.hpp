#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "zplane/config.hpp"
#include "zplane/reference.hpp"
#include "zplane/resonance.hpp"

namespace zplane {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int tolerance_failure = 1;
inline constexpr int config_error = 2;
inline constexpr int solver_failure = 3;
} // namespace exit_code

struct CommandOptions {
  std::filesystem::path out_dir; // empty: write nothing to disk
  int threads = 1;
  bool svg = false;
};

/// Comparison of one published row against a fresh refinement.
struct TableRowResult {
  ReferenceRow reference;
  Resonance computed;
  double position_error = 0.0;  // |dE_r|
  double second_error = 0.0;    // |dGamma|, or |dIm E| for rows given as Im E
  double position_allowed = 0.0;
  double second_allowed = 0.0;
  bool pass = false;
};

/// Starting point for a published row: its energy rounded to two decimals.
cplx coarse_guess(cplx energy);

/// Refines every row of `set` at the channel settings of `base` (l taken from
/// the row). `absolute_tolerance` overrides the set's own tolerance rule.
std::vector<TableRowResult> evaluate_reference_set(const ReferenceSet& set,
                                                   const ChannelConfig& base,
                                                   std::optional<double> absolute_tolerance,
                                                   int threads = 1);

// Each returns a process exit code. ConfigError/SolverError propagate to the caller.
int cmd_eigs(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
             std::ostream& err);
int cmd_sweep(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
              std::ostream& err);
int cmd_find(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
             std::ostream& err);
int cmd_scan(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
             std::ostream& err);
int cmd_stability(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
                  std::ostream& err);
int cmd_table(const RunConfig& config, const CommandOptions& opts, std::ostream& out,
              std::ostream& err);

} // namespace zplane
