#include "nlwalk/verify.hpp"

#include <algorithm>
#include <cmath>

#include "nlwalk/analytics.hpp"
#include "nlwalk/dynamics2d.hpp"
#include "nlwalk/experiments.hpp"
#include "nlwalk/fullspace.hpp"

namespace nlwalk {

namespace {

void finish(SuiteReport& r) {
  r.pass = !r.cases.empty();
  for (const auto& c : r.cases) {
    r.max_residual = std::max(r.max_residual, c.residual);
    r.pass = r.pass && c.pass;
  }
}

SuiteCase judge(std::string label, double residual, double tol) {
  return {std::move(label), residual, std::isfinite(residual) && residual <= tol};
}

}  // namespace

std::vector<ProblemInstance> oracle_instances() {
  return {
      // sharp peaks
      {64, 3, 63, 1}, {100, 2, 99, 1}, {256, 3, 255, 2}, {512, 4, 511, 1},
      {1024, 3, 1023, 1}, {100, 1, 10, 0.5}, {200, 5, 50, 2},
      // wide peaks
      {64, 3, 63, 3}, {100, 1, 99, 1}, {256, 3, 255, 3}, {1024, 3, 1023, 3},
      {128, 2, 127, 2.01}, {500, 5, 100, 5},
      // plateaus
      {100, 3, 99, 4}, {1024, 3, 1023, 4}, {256, 2, 50, 4}, {512, 3, 511, 5},
      {1000, 2, 100, 4}, {64, 3, 63, 3.5}, {200, 3, 199, 3.08},
  };
}

SuiteReport oracle_suite(int workers) {
  SuiteReport r;
  r.suite = "oracle";
  r.tolerance = 1e-8;
  const auto instances = oracle_instances();
  r.cases.resize(instances.size());
  IntegratorConfig cfg;
  cfg.t_max = 10.0;
  parallel_for(instances.size(), workers, [&](std::size_t i) {
    r.cases[i] = judge(describe(instances[i]), compare_to_subspace(instances[i], cfg),
                       r.tolerance);
  });
  finish(r);
  return r;
}

std::vector<TimePoint> analytic_grid() {
  const std::vector<ProblemInstance> instances = {
      {100, 1, 99, 1},     {1000, 3, 999, 1},   {1000, 3, 999, 2.99}, {1000, 3, 999, 3},
      {1000, 3, 999, 3.008}, {10000, 50, 500, 4}, {1000, 2, 10, 4},   {1000, 3, 999, 4},
      {1000, 3, 999, 5},   {100, 3, 99, 3.3},
  };
  const double fractions[] = {0.1, 0.3, 0.5, 0.8, 1.0};
  std::vector<TimePoint> grid;
  for (const auto& inst : instances) {
    const double x0 = static_cast<double>(inst.k) / static_cast<double>(inst.N);
    const bool plateau = regime(inst).kind == Regime::Plateau;
    const double top = plateau ? 0.95 * stationary_roots(inst).x_plus : 1.0;
    for (double f : fractions) grid.push_back({inst, x0 + f * (top - x0)});
  }
  return grid;
}

SuiteReport analytic_suite(int workers) {
  SuiteReport r;
  r.suite = "analytic";
  r.tolerance = 1e-8;
  const auto grid = analytic_grid();
  r.cases.resize(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    const auto& p = grid[i];
    const double a = analytic_time(p.instance, p.x);
    const double q = quadrature_time(p.instance, p.x);
    r.cases[i] = judge(describe(p.instance) + " x=" + format_double(p.x),
                       std::abs(a - q) / std::abs(q), r.tolerance);
  });
  finish(r);
  return r;
}

SuiteReport fixed_point_suite(int workers) {
  SuiteReport r;
  r.suite = "fixed-point";
  r.tolerance = 1e-6;
  std::vector<ProblemInstance> plateaus;
  for (const auto& inst : oracle_instances())
    if (regime(inst).kind == Regime::Plateau) plateaus.push_back(inst);
  plateaus.push_back({1000, 3, 999, 3.0091});
  plateaus.push_back({1000000, 3, 999999, 4});

  std::vector<SuiteCase> cases(3 * plateaus.size());
  IntegratorConfig cfg;
  cfg.t_max = 10.0;
  parallel_for(plateaus.size(), workers, [&](std::size_t i) {
    const auto& inst = plateaus[i];
    const double xp = stationary_roots(inst).x_plus;
    cases[3 * i] = judge(describe(inst) + " residual", std::abs(stationary_residual(inst, xp)),
                         1e-9);
    cases[3 * i + 1] =
        judge(describe(inst) + " gammaN", std::abs(effective_rate<double>(xp, inst)), 1e-9);
    const SubspaceState start(std::sqrt(xp), std::sqrt(1.0 - xp));
    const auto traj = integrate_from(inst, start, cfg);
    double drift = 0.0;
    for (const auto& s : traj.samples) drift = std::max(drift, std::abs(s.x - xp));
    cases[3 * i + 2] = judge(describe(inst) + " drift", drift, r.tolerance);
  });
  r.cases = std::move(cases);
  finish(r);
  return r;
}

std::vector<SuiteReport> run_suites(const std::string& name, int workers) {
  if (name == "oracle") return {oracle_suite(workers)};
  if (name == "analytic") return {analytic_suite(workers)};
  if (name == "fixed-point") return {fixed_point_suite(workers)};
  if (name == "all")
    return {oracle_suite(workers), analytic_suite(workers), fixed_point_suite(workers)};
  throw DomainError("unknown suite '" + name + "' (expected oracle, analytic, fixed-point or all)");
}

}  // namespace nlwalk
