#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "zplane/eigensolver.hpp"
#include "zplane/hamiltonian.hpp"
#include "zplane/resonance.hpp"
#include "zplane/trajectory.hpp"

using namespace zplane;

namespace {

// every sign change of Im Z along every branch, regardless of target
int count_axis_crossings(const std::vector<Trajectory>& branches) {
  int count = 0;
  for (const auto& t : branches)
    for (std::size_t i = 1; i < t.points.size(); ++i)
      if (t.points[i - 1].charge.imag() * t.points[i].charge.imag() < 0.0) ++count;
  return count;
}

const EnergyGrid kFig3bGrid{.re_start = 0.0, .re_end = 10.0, .steps = 101, .im_part = -3.0};

} // namespace

TEST_CASE("sweep is independent of the thread count") {
  const ChannelConfig cfg{.l = 0, .n = 40};
  const EnergyGrid grid{.re_start = 1.0, .re_end = 6.0, .steps = 15, .im_part = -0.5};
  const auto one = sweep(cfg, exponential_barrier_potential(), grid, 1);
  const auto three = sweep(cfg, exponential_barrier_potential(), grid, 3);
  REQUIRE(one.size() == three.size());
  for (std::size_t b = 0; b < one.size(); ++b) {
    CHECK(one[b].branch_id == three[b].branch_id);
    CHECK(one[b].discontinuities == three[b].discontinuities);
    for (std::size_t i = 0; i < one[b].points.size(); ++i) {
      CHECK(one[b].points[i].energy == three[b].points[i].energy);
      CHECK(one[b].points[i].charge == three[b].points[i].charge);
    }
  }
}

TEST_CASE("branch slopes agree with the analytic eigenvalue derivative") {
  const ChannelConfig cfg{.l = 0, .n = 60};
  const ChargeOperator op(cfg, exponential_barrier_potential());
  const double h = 1e-5;
  const cplx e(4.0, -1.0);
  const std::vector<cplx> energies{e - h, e + h};
  const auto branches = stitch(energies, {eigenvalues(op.at(e - h)), eigenvalues(op.at(e + h))});
  const auto at_e = eigen_decompose(op.at(e));
  int checked = 0;
  for (const auto& b : branches) {
    const cplx slope = (b.points[1].charge - b.points[0].charge) / (2.0 * h);
    const cplx mid = 0.5 * (b.points[0].charge + b.points[1].charge);
    const auto it = std::min_element(at_e.values.begin(), at_e.values.end(),
                                     [&](cplx a, cplx c) { return std::abs(a - mid) < std::abs(c - mid); });
    const auto k = static_cast<Eigen::Index>(it - at_e.values.begin());
    if (std::abs(*it) > 50.0) continue; // far branches are dominated by rounding
    const cplx exact = eigenvalue_derivative(op.energy_derivative(), at_e.vectors.col(k));
    CHECK(std::abs(slope - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("real-energy sweep never crosses the real axis") {
  const ChannelConfig cfg;
  const EnergyGrid grid{.re_start = 0.05, .re_end = 10.0, .steps = 200, .im_part = 0.0};
  const auto branches = sweep(cfg, exponential_barrier_potential(), grid);
  CHECK(count_axis_crossings(branches) == 0);
  CHECK(detect_crossings(branches, {-8, -4, -1, 0, 1, 4, 9}).empty());
}

TEST_CASE("grid doubling keeps samples and crossing counts") {
  const ChannelConfig cfg;
  const auto model = exponential_barrier_potential();
  auto fine_grid = kFig3bGrid;
  fine_grid.steps = 201;
  const auto coarse = sweep(cfg, model, kFig3bGrid);
  const auto fine = sweep(cfg, model, fine_grid);
  REQUIRE(coarse.size() == fine.size());

  // every coarse sample reappears at the even fine samples
  for (std::size_t i = 0; i < coarse.front().points.size(); ++i) {
    const cplx energy = coarse.front().points[i].energy;
    CHECK(fine.front().points[2 * i].energy == energy);
    std::vector<cplx> a, b;
    for (const auto& t : coarse) a.push_back(t.points[i].charge);
    for (const auto& t : fine) b.push_back(t.points[2 * i].charge);
    std::sort(a.begin(), a.end(), charge_less);
    std::sort(b.begin(), b.end(), charge_less);
    CHECK(a == b);
  }
  CHECK(count_axis_crossings(coarse) == count_axis_crossings(fine));
  const std::vector<double> targets{-8, -4, 9};
  CHECK(detect_crossings(coarse, targets).size() == detect_crossings(fine, targets).size());

  SUBCASE("a larger rotation angle exposes at least as many crossings") {
    ChannelConfig small = cfg;
    small.theta = 0.1;
    CHECK(count_axis_crossings(coarse) >= count_axis_crossings(sweep(small, model, kFig3bGrid)));
  }
}

TEST_CASE("automatic search recovers the zero-charge resonances") {
  SearchSpec spec;
  spec.z_targets = {0.0};
  spec.im_schedule = {-0.05, -1.0, -3.0};
  spec.steps = 101;
  // the broad 5.277 - 3.389i pole crosses near Z = -0.55 at Im E = -3, just
  // outside the default window; a unit window matches refinement's reach
  spec.window = 1.0;
  spec.run_stability = false;
  const auto result = auto_search(ChannelConfig{}, exponential_barrier_potential(), spec);
  for (const double expected : {3.426390310, 4.834806841, 5.277279864}) {
    const bool found = std::any_of(result.resonances.begin(), result.resonances.end(),
                                   [&](const Resonance& r) { return std::abs(r.position() - expected) < 1e-7; });
    CHECK_MESSAGE(found, "missing resonance at " << expected);
  }
  for (const auto& r : result.resonances) {
    CHECK(r.converged);
    CHECK(r.energy.imag() <= 0.0);
  }
  CHECK(std::is_sorted(result.resonances.begin(), result.resonances.end(),
                       [](const Resonance& a, const Resonance& b) { return a.position() < b.position(); }));
}
