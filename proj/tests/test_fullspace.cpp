#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlwalk/dynamics2d.hpp"
#include "nlwalk/analytics.hpp"
#include "nlwalk/fullspace.hpp"
#include "nlwalk/verify.hpp"
#include "oracles.hpp"

using namespace nlwalk;

TEST_CASE("marked and unmarked amplitudes stay equal on the six-vertex graph") {
  IntegratorConfig cfg;
  cfg.t_max = 10;
  for (double g : {0.0, 5.0, 50.0}) {
    const auto traj = integrate_full({6, 2, g, 1.5}, cfg);
    CHECK(traj.max_spread() <= 1e-10);
    CHECK(traj.max_norm_err() <= 1e-9);
  }
}

TEST_CASE("linear walk matches the dense matrix exponential") {
  const ProblemInstance inst{16, 1, 0, 0};
  IntegratorConfig cfg;
  cfg.t_max = 8;
  const auto traj = integrate_full(inst, cfg);
  for (double t : {0.5, 2.0, 5.0, 8.0}) {
    const auto expect = oracle::linear_evolution(16, {0}, t);
    const auto& s = traj.samples[static_cast<std::size_t>(std::lround(t / cfg.sample_dt))];
    CHECK(s.t == doctest::Approx(t));
    CHECK(std::abs(s.x - std::norm(expect(0))) <= 1e-8);
  }
  const auto psi = traj.final_state.amplitudes;
  CHECK((psi - oracle::linear_evolution(16, {0}, 8.0)).norm() <= 1e-8);
}

TEST_CASE("marked set placement does not change x(t)") {
  const ProblemInstance inst{40, 3, 39, 2};
  IntegratorConfig cfg;
  cfg.t_max = 5;
  const auto first = integrate_full(inst, cfg);
  const auto moved_state = uniform_full_state(inst, {37, 4, 19});
  const auto moved = integrate_full(inst, cfg, &moved_state);
  double dev = 0.0;
  for (std::size_t i = 0; i < first.samples.size(); ++i)
    dev = std::max(dev, std::abs(first.samples[i].x - moved.samples[i].x));
  CHECK(dev <= 1e-12);
}

TEST_CASE("full space agrees with the subspace reduction") {
  IntegratorConfig cfg;
  cfg.t_max = 10;
  CHECK(compare_to_subspace({64, 3, 63, 3}, cfg) <= 1e-8);
  CHECK(compare_to_subspace({100, 2, 99, 1}, cfg) <= 1e-8);
  CHECK(compare_to_subspace({6, 2, 0, 0}, cfg) <= 1e-10);
}

TEST_CASE("projections reproduce the subspace amplitudes") {
  const ProblemInstance inst{50, 2, 49, 1};
  IntegratorConfig cfg;
  cfg.t_max = 2;
  const auto full = integrate_full(inst, cfg);
  const auto reduced = integrate(inst, cfg);
  for (std::size_t i = 0; i < full.samples.size(); i += 20) {
    CHECK(std::abs(full.samples[i].alpha - reduced.samples[i].state(0)) <= 1e-8);
    CHECK(std::abs(full.samples[i].beta - reduced.samples[i].state(1)) <= 1e-8);
  }
}

TEST_CASE("oracle grid covers all regimes") {
  int counts[3] = {0, 0, 0};
  for (const auto& inst : oracle_instances()) {
    CHECK(inst.N <= 1024);
    ++counts[static_cast<int>(regime(inst).kind)];
  }
  CHECK(counts[0] >= 5);
  CHECK(counts[1] >= 5);
  CHECK(counts[2] >= 5);
}

TEST_CASE("size limits and marked-set validation") {
  CHECK_THROWS_AS(integrate_full({5000, 1, 1, 1}), DomainError);
  CHECK_THROWS_AS(compare_to_subspace({2000, 1, 1, 1}), DomainError);
  CHECK_THROWS_AS(uniform_full_state({10, 2, 1, 1}, {1, 1}), DomainError);
  CHECK_THROWS_AS(uniform_full_state({10, 2, 1, 1}, {1, 10}), DomainError);
  CHECK_THROWS_AS(uniform_full_state({10, 2, 1, 1}, {1}), DomainError);
}
