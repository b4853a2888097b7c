#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zplane/resonance.hpp"
#include "zplane/trajectory.hpp"

namespace zplane {

/// printf-style %.{digits}g with negative zero printed as 0.
std::string format_number(double x, int digits = 17);

/// x rounded to `digits` significant decimal digits.
double round_significant(double x, int digits);

/// Header `branch_id,e_re,e_im,z_re,z_im`, one row per (branch, sample),
/// branch-major. Full round-trip precision, LF line endings.
void write_trajectory_csv(std::ostream& out, const std::vector<Trajectory>& trajectories);

/// Eigenvalue listing `z_re,z_im`, one line per eigenvalue in the given order.
void write_eigenvalue_csv(std::ostream& out, const std::vector<cplx>& values);

/// Polyline plot of the branches inside `window` (re_min, re_max, im_min, im_max),
/// with the real axis and integer charge ticks.
void write_trajectory_svg(std::ostream& out, const std::vector<Trajectory>& trajectories,
                          const std::array<double, 4>& window);

/// `{z_target, l, e_r, gamma, converged, stability}` with 12 significant digits.
nlohmann::json to_json(const Resonance& res);
nlohmann::json to_json(const std::vector<Resonance>& list);

} // namespace zplane
