#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "zplane/eigensolver.hpp"
#include "zplane/error.hpp"
#include "zplane/hamiltonian.hpp"
#include "zplane/resonance.hpp"

using namespace zplane;

namespace {

const cplx kSharpZ0(3.426390310, -0.5 * 0.025548961);

} // namespace

TEST_CASE("detect_crossings interpolates the real-axis crossing") {
  Trajectory t;
  t.branch_id = 3;
  t.points = {{cplx(1.0), cplx(1.0, 0.1)}, {cplx(2.0), cplx(1.0, -0.1)}};
  const auto found = detect_crossings({t}, {1.0});
  REQUIRE(found.size() == 1);
  CHECK(found[0].branch_id == 3);
  CHECK(found[0].z_at_crossing == doctest::Approx(1.0));
  CHECK(found[0].e_estimate == cplx(1.5));
  CHECK(found[0].e_lo == cplx(1.0));
  CHECK(found[0].e_hi == cplx(2.0));

  CHECK(detect_crossings({t}, {2.0}).empty());
  CHECK(detect_crossings({t}, {1.4}, 0.5).size() == 1);
  CHECK(detect_crossings({t}, {}).empty());
  CHECK_THROWS_AS(detect_crossings({t}, {1.0}, 0.0), ConfigError);

  // touching zero is not a sign change
  t.points[1].charge = cplx(1.0, 0.0);
  CHECK(detect_crossings({t}, {1.0}).empty());
}

TEST_CASE("hydrogen ground state from a Z-plane search") {
  const auto r = refine_resonance(cplx(-0.4), -1.0, ChannelConfig{}, PotentialModel{});
  CHECK(r.converged);
  CHECK(std::abs(r.energy - cplx(-0.5)) < 1e-10);
  CHECK(std::abs(r.width()) < 1e-10);
  CHECK(r.l == 0);
  CHECK(r.z_target == -1.0);
}

TEST_CASE("sharp s-wave resonance: convergence, residual and idempotence") {
  const ChannelConfig cfg;
  const auto model = exponential_barrier_potential();
  const auto r = refine_resonance(cplx(3.4, -0.02), 0.0, cfg, model);
  REQUIRE(r.converged);
  CHECK(r.iterations < 50);
  CHECK(std::abs(r.position() - 3.426390310) < 1e-7);
  CHECK(std::abs(r.width() - 0.025548961) < 1e-7);
  CHECK(r.residual <= 1e-10);

  // nearest eigenvalue to the target at the converged energy
  const auto values = eigenvalues(ChargeOperator(cfg, model).at(r.energy));
  const double nearest = std::abs(*std::min_element(values.begin(), values.end(), [](cplx a, cplx b) {
    return std::abs(a) < std::abs(b);
  }));
  CHECK(nearest <= 1e-10);

  const auto again = refine_resonance(r.energy, 0.0, cfg, model);
  CHECK(again.converged);
  CHECK(std::abs(again.energy - r.energy) <= 1e-12);
}

TEST_CASE("non-convergence is reported in-band") {
  RefineOptions opts;
  opts.max_iterations = 1;
  const auto r = refine_resonance(cplx(4.9, -1.0), 0.0, ChannelConfig{}, exponential_barrier_potential(), opts);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 1);
}

TEST_CASE("equidistant eigenvalues make the selection ambiguous") {
  // theta = 0 and real E give a real symmetric matrix; a target at the
  // midpoint of two neighbouring charges is equally far from both.
  const ChannelConfig cfg{.l = 0, .n = 40, .lambda = 20.0, .theta = 0.0};
  const auto model = exponential_barrier_potential();
  const auto values = eigenvalues(ChargeOperator(cfg, model).at(cplx(3.0)));
  const double target = 0.5 * (values[20].real() + values[21].real());
  REQUIRE(values[21].real() - values[20].real() > 1e-3);
  CHECK_THROWS_AS(refine_resonance(cplx(3.0), target, cfg, model), SolverError);
}

TEST_CASE("stability scan") {
  const ChannelConfig cfg;
  const auto model = exponential_barrier_potential();
  const auto broad = refine_resonance(cplx(5.28, -3.39), 0.0, cfg, model);
  REQUIRE(broad.converged);
  CHECK(std::abs(broad.width() - 6.778106591) < 1e-7);

  SUBCASE("single point") {
    const StabilityGrid grid{.lambdas = {20.0}, .thetas = {0.7}, .sizes = {200}};
    const auto rep = stability_scan(broad, grid, cfg, model);
    CHECK(rep.grid.size() == 1);
    CHECK(rep.max_deviation == 0.0);
    CHECK(rep.plateau);
  }
  SUBCASE("under-rotated point breaks the plateau") {
    const StabilityGrid grid{.lambdas = {20.0}, .thetas = {0.05, 0.7}, .sizes = {200}};
    const auto rep = stability_scan(broad, grid, cfg, model);
    CHECK_FALSE(rep.plateau);
  }
  SUBCASE("invalid grids") {
    CHECK_THROWS_AS(stability_scan(broad, StabilityGrid{}, cfg, model), ConfigError);
    Resonance failed = broad;
    failed.converged = false;
    CHECK_THROWS_AS(
        stability_scan(failed, StabilityGrid{.lambdas = {20.0}, .thetas = {0.7}, .sizes = {200}}, cfg, model),
        SolverError);
  }
}

TEST_CASE("default stability grid spans the published range at the default channel") {
  const auto g = default_stability_grid(ChannelConfig{});
  CHECK(g.lambdas == std::vector<double>{10.0, 20.0, 40.0});
  REQUIRE(g.thetas.size() == 3);
  CHECK(g.thetas[0] == doctest::Approx(0.5));
  CHECK(g.thetas[2] == doctest::Approx(0.9));
  CHECK(g.sizes == std::vector<int>{200});
  CHECK(g.tolerance == 1e-8);
}

TEST_CASE("auto_search trivial cases") {
  const ChannelConfig cfg{.l = 0, .n = 60};
  SearchSpec spec;
  spec.steps = 21;
  CHECK(auto_search(cfg, exponential_barrier_potential(), spec).resonances.empty());

  // pure Coulomb has no positive-energy resonances
  spec.z_targets = {-2.0, -1.0, 0.0, 1.0, 2.0};
  spec.im_schedule = {0.0};
  const auto res = auto_search(cfg, PotentialModel{}, spec);
  CHECK(res.resonances.empty());
}

TEST_CASE("resonances are ordered by target then position") {
  std::vector<Resonance> list(3);
  list[0].z_target = 0.0;
  list[0].energy = cplx(5.0, -1.0);
  list[1].z_target = -1.0;
  list[1].energy = cplx(4.0, -1.0);
  list[2].z_target = 0.0;
  list[2].energy = cplx(3.0, -1.0);
  sort_resonances(list);
  CHECK(list[0].z_target == -1.0);
  CHECK(list[1].position() == 3.0);
  CHECK(list[2].position() == 5.0);
}
