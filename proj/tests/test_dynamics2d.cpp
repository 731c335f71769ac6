#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <numbers>
#include <random>

#include "nlwalk/analytics.hpp"
#include "nlwalk/dynamics2d.hpp"

using namespace nlwalk;

namespace {

EventRequest terminal() {
  EventRequest r;
  r.require_terminal = true;
  r.stop_when_resolved = true;
  return r;
}

// Random instances with N <= 1e4 and 2k < N.
std::vector<ProblemInstance> random_instances(int count, std::uint64_t seed, bool peaks_only) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ProblemInstance> out;
  while (static_cast<int>(out.size()) < count) {
    const auto N = static_cast<std::int64_t>(20 + unit(rng) * 9980);
    const auto k = 1 + static_cast<std::int64_t>(unit(rng) * std::min<double>(20, N / 2 - 1));
    const double g = unit(rng) < 0.5 ? static_cast<double>(N - 1) : unit(rng) * 200;
    const double h = unit(rng) * 2.0 * static_cast<double>(k);
    ProblemInstance inst{N, k, g, h};
    if (peaks_only && regime(inst).kind == Regime::Plateau) continue;
    if (regime(inst).boundary_note) continue;
    out.push_back(inst);
  }
  return out;
}

}  // namespace

TEST_CASE("generator at the uniform state and in the linear limit") {
  const ProblemInstance inst{100, 3, 99, 1};
  const double x0 = 0.03;
  const auto m = generator<double>(x0, inst);
  const auto s = strengths<double>(x0, inst);
  CHECK(s.gamma_c * 100 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m(0, 1) == m(1, 0));

  const ProblemInstance lin{64, 2, 0, 0};
  const auto ml = generator<double>(0.4, lin);
  CHECK(ml(0, 0) == doctest::Approx(2.0 / 64 + 1.0));
  CHECK(ml(1, 1) == doctest::Approx(62.0 / 64));
  CHECK(ml(0, 1) == doctest::Approx(std::sqrt(2.0 * 62.0) / 64));
}

TEST_CASE("generator is diagonal at the plateau root") {
  const ProblemInstance inst{1000, 3, 999, 4};
  const auto m = generator<double>(stationary_roots(inst).x_plus, inst);
  CHECK(std::abs(m(0, 1)) < 1e-12);
}

TEST_CASE("rhs matches i M psi and the rate formula") {
  const ProblemInstance inst{200, 2, 50, 1.5};
  const SubspaceState y(std::complex<double>(0.3, 0.1), std::complex<double>(0.2, -0.9));
  const auto m = generator<double>(std::norm(y(0)), inst);
  const SubspaceState d = rhs<double>(y, inst);
  const SubspaceState expect = std::complex<double>(0, 1) * (m.cast<std::complex<double>>() * y);
  CHECK((d - expect).norm() < 1e-15);
  // d|alpha|^2/dt from the derivative itself.
  const double rate = 2.0 * std::real(std::conj(y(0)) * d(0));
  CHECK(success_rate<double>(y, inst) == doctest::Approx(rate).epsilon(1e-12));
}

TEST_CASE("constant-time peak for k=1, h=1, g=N-1") {
  for (std::int64_t n : {100, 1000}) {
    const ProblemInstance inst{n, 1, static_cast<double>(n - 1), 1};
    const auto traj = integrate(inst, {}, terminal());
    const auto peak = traj.find(EventKind::FirstPeak);
    REQUIRE(peak);
    CHECK(peak->x >= 1 - 1e-4);
    CHECK(peak->t == doctest::Approx(runtime_peak(inst)).epsilon(1e-8));
  }
}

TEST_CASE("plateaus at the stationary root") {
  struct Case {
    ProblemInstance inst;
    double height;
    double tol;
  };
  for (const Case& c : {Case{{1000, 2, 10, 4}, 0.653, 0.001}, Case{{1000, 3, 999, 5}, 0.6, 0.002}}) {
    IntegratorConfig cfg;
    cfg.t_max = 100;
    const auto traj = integrate(c.inst, cfg, terminal());
    const auto plateau = traj.find(EventKind::PlateauDetected);
    REQUIRE(plateau);
    CHECK(plateau->x == doctest::Approx(c.height).epsilon(c.tol));
    CHECK(plateau->x == doctest::Approx(stationary_roots(c.inst).x_plus).epsilon(1e-6));
    CHECK_FALSE(traj.find(EventKind::FirstPeak));
  }
}

TEST_CASE("time_to_probability_numeric") {
  CHECK(time_to_probability_numeric({100, 1, 0, 0}, 1.0) ==
        doctest::Approx(5 * std::numbers::pi).epsilon(1e-9));
  const ProblemInstance wide{1000, 3, 999, 3};
  CHECK(time_to_probability_numeric(wide, 1.0) ==
        doctest::Approx(analytic_time(wide, 1.0)).epsilon(1e-8));
  CHECK(time_to_probability_numeric(wide, 0.5) ==
        doctest::Approx(analytic_time(wide, 0.5)).epsilon(1e-8));
  CHECK_THROWS_AS(time_to_probability_numeric({1000, 3, 999, 4}, 0.9), UnreachableError);
  CHECK_THROWS_AS(time_to_probability_numeric({1000, 3, 999, 4}, 0.002), DomainError);
}

TEST_CASE("crossing events land on their target") {
  const ProblemInstance inst{500, 2, 499, 1};
  EventRequest req = terminal();
  req.crossings = {0.25, 0.5, 0.999};
  const auto traj = integrate(inst, {}, req);
  for (double target : req.crossings) {
    const auto e = traj.crossing(target);
    REQUIRE(e);
    CHECK(std::abs(e->x - target) < 1e-9);
    CHECK(e->t <= traj.find(EventKind::FirstPeak)->t);
  }
}

TEST_CASE("norm conservation on random instances") {
  IntegratorConfig cfg;
  cfg.t_max = 20;
  for (const auto& inst : random_instances(50, 7, false)) {
    CAPTURE(describe(inst));
    const auto traj = integrate(inst, cfg);
    CHECK(traj.max_norm_err() <= 1e-9);
    CHECK(traj.samples.back().t == doctest::Approx(20.0));
  }
}

TEST_CASE("monotone rise and flow consistency before the first peak") {
  for (const auto& inst : random_instances(20, 11, true)) {
    CAPTURE(describe(inst));
    IntegratorConfig cfg;
    cfg.t_max = 2.0 * runtime_peak(inst) + 1.0;
    const auto traj = integrate(inst, cfg, terminal());
    const auto peak = traj.find(EventKind::FirstPeak);
    REQUIRE(peak);
    CHECK(peak->x >= 1 - 1e-4);
    const double N = static_cast<double>(inst.N), k = static_cast<double>(inst.k);
    double worst_rate = 0.0, worst_flow = 0.0;
    for (const auto& s : traj.samples) {
      if (s.t >= peak->t) break;
      const double rate = success_rate<double>(s.state, inst);
      worst_rate = std::min(worst_rate, rate);
      const double gap = (1 - s.x) * (N * s.x - k);
      if (gap <= 1e-6) continue;
      const double flow = 2 * std::sqrt(k) / N * effective_rate<double>(s.x, inst) * std::sqrt(gap);
      worst_flow = std::max(worst_flow, std::abs(rate - flow) / std::abs(flow));
    }
    CHECK(worst_rate >= -1e-12);
    CHECK(worst_flow <= 1e-6);
  }
}

TEST_CASE("plateau sup stays at x_plus") {
  IntegratorConfig cfg;
  cfg.t_max = 20;
  for (const ProblemInstance& inst : {ProblemInstance{100, 3, 99, 4}, ProblemInstance{1000, 2, 20, 4},
                                      ProblemInstance{2000, 5, 300, 6}}) {
    const auto traj = integrate(inst, cfg);
    CHECK(traj.max_x() <= stationary_roots(inst).x_plus + 1e-4);
  }
}

TEST_CASE("fixed point is stationary") {
  const ProblemInstance inst{1000, 3, 999, 4};
  const double xp = stationary_roots(inst).x_plus;
  IntegratorConfig cfg;
  cfg.t_max = 10;
  const auto traj = integrate_from(inst, SubspaceState(std::sqrt(xp), std::sqrt(1 - xp)), cfg);
  double drift = 0.0;
  for (const auto& s : traj.samples) drift = std::max(drift, std::abs(s.x - xp));
  CHECK(drift <= 1e-6);
}

TEST_CASE("samples are on the grid and strictly increasing") {
  IntegratorConfig cfg;
  cfg.t_max = 3;
  cfg.sample_dt = 0.25;
  const auto traj = integrate({100, 2, 99, 1}, cfg);
  REQUIRE(traj.samples.size() == 13);
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    CHECK(traj.samples[i].t > traj.samples[i - 1].t);
    CHECK(traj.samples[i].t == doctest::Approx(0.25 * static_cast<double>(i)));
    CHECK(traj.samples[i].x >= 0.0);
    CHECK(traj.samples[i].x <= 1.0 + 1e-12);
  }
}

TEST_CASE("determinism") {
  const auto a = integrate({300, 3, 299, 2});
  const auto b = integrate({300, 3, 299, 2});
  REQUIRE(a.samples.size() == b.samples.size());
  CHECK(std::memcmp(&a.samples.back().state, &b.samples.back().state, sizeof(SubspaceState)) == 0);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) CHECK(a.events[i].t == b.events[i].t);
}

TEST_CASE("integration failures") {
  IntegratorConfig cfg;
  cfg.t_max = 1.0;
  try {
    integrate({1000, 3, 999, 4}, cfg, terminal());
    FAIL("expected HorizonError");
  } catch (const HorizonError& e) {
    CHECK(e.family() == ErrorFamily::Numeric);
    CHECK(e.partial().samples.back().t == doctest::Approx(1.0));
  }
  ProblemInstance strict{1000, 3, 999, 1};
  strict.norm_tol = 1e-18;
  CHECK_THROWS_AS(integrate(strict, cfg), NormDriftError);

  IntegratorConfig bad;
  bad.sample_dt = 50;
  CHECK_THROWS_AS(integrate({100, 1, 1, 1}, bad), DomainError);
}
