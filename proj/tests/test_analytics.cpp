#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "nlwalk/analytics.hpp"
#include "nlwalk/dynamics2d.hpp"
#include "nlwalk/verify.hpp"
#include "oracles.hpp"

using namespace nlwalk;
using std::numbers::pi;

namespace {

// Thirty instances over all three regimes, away from the boundary.
std::vector<ProblemInstance> regime_grid() {
  std::vector<ProblemInstance> out;
  for (std::int64_t n : {100, 1000, 5000})
    for (double h : {0.5, 2.0, 3.0, 3.0 + 0.5 * 9.0 / static_cast<double>(n - 1), 3.5, 5.0})
      out.push_back({n, 3, static_cast<double>(n - 1), h});
  for (double g : {5.0, 20.0, 80.0}) out.push_back({1000, 2, g, 4.0});
  for (double g : {5.0, 20.0, 80.0}) out.push_back({1000, 2, g, 1.0});
  for (std::int64_t k : {1, 4, 10, 25, 60, 150}) out.push_back({2000, k, 300, 2.0});
  return out;
}

}  // namespace

TEST_CASE("critical ratio") {
  CHECK(critical_h(3, 99) == doctest::Approx(3.0 + 1.0 / 11.0).epsilon(1e-12));
  CHECK(std::abs(critical_h(3, 99) - 3.0909090909090909) < 1e-9);
  CHECK(std::abs(critical_h(3, 999) - 3.009009009009009) < 1e-9);
  CHECK(critical_h(5, 1e15) == doctest::Approx(5.0));
  CHECK(std::isinf(critical_h(5, 0.0)));
}

TEST_CASE("stationary roots") {
  CHECK(stationary_roots({1000, 2, 10, 4}).x_plus_large_n == doctest::Approx(0.653).epsilon(1e-3));
  CHECK(stationary_roots({1000, 2, 20, 4}).x_plus_large_n == doctest::Approx(0.585).epsilon(1e-3));
  CHECK(stationary_roots({1000, 2, 100, 4}).x_plus_large_n == doctest::Approx(0.519).epsilon(1e-3));
  CHECK(stationary_roots({1000, 2, 10, 4}).x_plus == doctest::Approx(0.653).epsilon(1e-3));
  CHECK(stationary_roots({1000000, 3, 1e12, 4}).x_plus == doctest::Approx(0.75).epsilon(1e-5));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const auto N = static_cast<std::int64_t>(10 + unit(rng) * 1e6);
    const auto k = 1 + static_cast<std::int64_t>(unit(rng) * std::min<double>(1000, N / 2 - 1));
    const ProblemInstance inst{N, k, 1e-3 + unit(rng) * 1e4, 1e-3 + unit(rng) * 50};
    CAPTURE(describe(inst));
    const auto r = stationary_roots(inst);
    // The quadratic is concave, so x_minus < 0 exactly when it is positive at x = 0.
    const double nk = static_cast<double>(N - k);
    const double at_zero = 1.0 - inst.g / nk + inst.g * inst.h / (nk * nk);
    if (std::abs(at_zero) > 1e-9) CHECK((r.x_minus < 0.0) == (at_zero > 0.0));
    if (inst.g <= static_cast<double>(N - 1) && inst.h < nk) CHECK(r.x_minus < 0.0);
    CHECK(std::abs(stationary_residual(inst, r.x_plus)) <= 1e-9);
    CHECK(std::abs(stationary_residual(inst, r.x_minus)) <= 1e-9);
    CHECK(std::abs(effective_rate<double>(r.x_plus, inst)) <= 1e-9 * std::max(1.0, inst.g));
  }
  CHECK_THROWS_AS(stationary_roots({100, 1, 0, 1}), DomainError);
}

TEST_CASE("factored identities of the quadratic coefficients") {
  for (const auto& inst : regime_grid()) {
    const auto raw = quadratic_coefficients(inst);
    const auto fac = factored_coefficients(inst);
    CHECK(raw.Delta == raw.b * raw.b - 4 * raw.a * raw.c);
    CHECK(raw.Delta == doctest::Approx(fac.Delta).epsilon(1e-10));
    CHECK(raw.xi == doctest::Approx(fac.xi).epsilon(1e-10));
    const double scale = std::max({std::abs(raw.a), std::abs(raw.b), std::abs(raw.c)});
    CHECK(std::abs(raw.Sigma - fac.Sigma) <= 1e-10 * std::max(std::abs(fac.Sigma), 1e-3 * scale));
  }
}

TEST_CASE("regimes and scaling classes") {
  auto c = classify({1000, 3, 999, 1});
  CHECK(c.regime.kind == Regime::SharpPeak);
  CHECK(*c.scaling == ScalingClass::SharpStrong);
  CHECK(std::string(runtime_law(*c.scaling)) == "sqrt(N/g)");

  c = classify({1000, 3, 999, 3});
  CHECK(c.regime.kind == Regime::WidePeak);
  CHECK(*c.scaling == ScalingClass::WideStrong);

  c = classify({1000, 3, 999, 4});
  CHECK(c.regime.kind == Regime::Plateau);
  CHECK(c.status == ScalingStatus::NotApplicable);
  CHECK_THROWS_AS(scaling_class({1000, 3, 999, 4}), RegimeError);

  CHECK(classify({100000, 1000, 1, 200}).scaling == ScalingClass::SharpWeak);
  CHECK(classify({10000000, 200000, 1000, 4}).scaling == ScalingClass::SharpMid);
  CHECK(classify({10000, 2000, 4, 2000}).scaling == ScalingClass::WideWeak);
  CHECK_FALSE(classify({100000, 1000, 4, 100}).scaling);

  c = classify({1000, 3, 999, 3.001});
  CHECK(c.regime.kind == Regime::WidePeak);
  CHECK(c.extrapolated_from_h_equals_k);

  c = classify({1000, 50, 500, 40});
  CHECK(c.status == ScalingStatus::Ambiguous);
  CHECK_THROWS_AS(scaling_class({1000, 50, 500, 40}), AmbiguousScalingError);

  CHECK(regime({100, 3, 99, 3.0909090}).boundary_note);
  CHECK_FALSE(regime({100, 3, 99, 3.08}).boundary_note);
}

TEST_CASE("closed form agrees with the tanh-sinh oracle in x") {
  for (const auto& inst : regime_grid()) {
    CAPTURE(describe(inst));
    const double x0 = static_cast<double>(inst.k) / static_cast<double>(inst.N);
    const bool plateau = regime(inst).kind == Regime::Plateau;
    const double top = plateau ? 0.9 * stationary_roots(inst).x_plus : 1.0;
    for (double f : {0.05, 0.4, 0.75, 1.0}) {
      const double x = x0 + f * (top - x0);
      CHECK(analytic_time(inst, x) == doctest::Approx(oracle::time_in_x(inst, x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("analytic time examples") {
  CHECK(analytic_time({100, 1, 0, 0}, 1.0) == doctest::Approx(5 * pi).epsilon(1e-12));
  CHECK(runtime_peak({1000, 3, 999, 3}) == doctest::Approx(3.1337586477).epsilon(1e-9));
  CHECK(runtime_peak({100, 1, 99, 1}) == doctest::Approx(3.1256920677).epsilon(1e-9));
  // The finite-parameter h = k law holds to leading order.
  const ProblemInstance big{100000, 3, 99999, 3};
  const double law = pi * std::sqrt(100000.0 / (99999.0 * (1 + 12.0 / 99999.0)));
  CHECK(runtime_peak(big) == doctest::Approx(law).epsilon(0.01));
  CHECK(analytic_time({100, 1, 99, 1}, 0.01) == 0.0);

  CHECK_THROWS_AS(runtime_peak({1000, 3, 999, 4}), RegimeError);
  CHECK_THROWS_AS(time_to_half_plateau({1000, 3, 999, 1}), RegimeError);
  CHECK_THROWS_AS(analytic_time({1000, 3, 999, 4}, 0.8), UnreachableError);
  CHECK_THROWS_AS(analytic_time({1000, 3, 999, 1}, 0.001), DomainError);
}

TEST_CASE("analytic time is increasing in x") {
  for (const auto& inst : regime_grid()) {
    const double x0 = static_cast<double>(inst.k) / static_cast<double>(inst.N);
    const bool plateau = regime(inst).kind == Regime::Plateau;
    const double top = plateau ? 0.99 * stationary_roots(inst).x_plus : 1.0;
    double prev = 0.0;
    for (int i = 1; i <= 40; ++i) {
      const double t = analytic_time(inst, x0 + (top - x0) * i / 40.0);
      CHECK(t > prev);
      prev = t;
    }
  }
}

TEST_CASE("half plateau near pi/2") {
  for (double h : {4.0, 5.0}) {
    const ProblemInstance inst{1000, 3, 999, h};
    const double t = time_to_half_plateau(inst);
    CHECK(t == doctest::Approx(pi / 2).epsilon(0.02));
    const double xp = stationary_roots(inst).x_plus;
    CHECK(time_to_probability_numeric(inst, xp / 2) == doctest::Approx(t).epsilon(1e-4));
  }
}

TEST_CASE("analytic and integrated times agree across regimes") {
  for (const auto& inst : regime_grid()) {
    CAPTURE(describe(inst));
    const bool plateau = regime(inst).kind == Regime::Plateau;
    const double x = plateau ? 0.5 * stationary_roots(inst).x_plus : 1.0;
    IntegratorConfig cfg;
    cfg.t_max = 2.0 * analytic_time(inst, x) + 1.0;
    const double numeric = plateau ? time_to_probability_numeric(inst, x, cfg)
                                   : integrate(inst, cfg, [] {
                                       EventRequest r;
                                       r.require_terminal = true;
                                       r.stop_when_resolved = true;
                                       return r;
                                     }())
                                         .find(EventKind::FirstPeak)
                                         ->t;
    CHECK(numeric == doctest::Approx(analytic_time(inst, x)).epsilon(1e-6));
  }
}

TEST_CASE("classification matches integrated behaviour") {
  for (const auto& inst : regime_grid()) {
    CAPTURE(describe(inst));
    IntegratorConfig cfg;
    cfg.t_max = 200;
    EventRequest req;
    req.require_terminal = true;
    req.stop_when_resolved = true;
    const auto traj = integrate(inst, cfg, req);
    const auto peak = traj.find(EventKind::FirstPeak);
    if (regime(inst).kind == Regime::Plateau) {
      CHECK_FALSE(peak);
      CHECK(traj.find(EventKind::PlateauDetected));
    } else {
      REQUIRE(peak);
      CHECK(peak->x >= 1 - 1e-4);
    }
  }
}

TEST_CASE("peak width") {
  for (double g : {0.0, 10.0, 99.0, 1e4})
    CHECK(peak_width({100, 1, g, 1}) == doctest::Approx(200 * std::sqrt(0.01 / 99)).epsilon(1e-12));
  CHECK_THROWS_AS(peak_width({1000, 3, 999, 4}), RegimeError);
  CHECK_THROWS_AS(peak_width({1000, 3, 999, 1}, 1.5), DomainError);

  std::vector<ProblemInstance> sharp, wide;
  for (std::int64_t n : {1000, 3000, 10000, 30000, 100000}) {
    sharp.push_back({n, 3, static_cast<double>(n - 1), 1});
    wide.push_back({n, 3, static_cast<double>(n - 1), 3});
  }
  CHECK(width_scaling(sharp, Axis::N).exponent == doctest::Approx(-0.5).epsilon(0.04));
  CHECK(width_scaling(wide, Axis::N).exponent == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("summary fields follow the regime") {
  auto s = summarize({1000, 3, 999, 4});
  CHECK(s.plateau_height);
  CHECK(s.width_infinite);
  CHECK_FALSE(s.t_star);
  CHECK(*s.t_half == doctest::Approx(1.5562).epsilon(1e-4));

  s = summarize({1000, 3, 999, 1});
  CHECK_FALSE(s.plateau_height);
  CHECK(s.t_star);
  CHECK_FALSE(s.t_half);

  s = summarize({100, 3, 99, 3.0909090});
  CHECK(s.classification.regime.boundary_note);
  CHECK(std::isinf(*s.t_star));
  CHECK(s.plateau_height);
  CHECK(s.t_half);
}

TEST_CASE("verify suites pass") {
  CHECK(analytic_suite().pass);
  CHECK(fixed_point_suite().pass);
}
