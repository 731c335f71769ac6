#include "nlwalk/dynamics2d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlwalk/analytics.hpp"

namespace nlwalk {

namespace {

constexpr double kEventTimeTol = 1e-10;
// A sign change of dx/dt counts as a peak only if the rate on either side is
// above round-off; plateaus otherwise produce spurious flips.
constexpr double kPeakRateFloor = 1e-10;

template <typename F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  while (hi - lo > kEventTimeTol) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Sample make_sample(double t, const SubspaceState& y, const ProblemInstance& inst) {
  Sample s;
  s.t = t;
  s.state = y;
  s.x = success_probability(y);
  s.gamma = strengths<double>(s.x, inst).gamma_c;
  s.norm_err = norm_error(y);
  return s;
}

// Integration runs in a frame rotating with the unmarked diagonal entry of M,
// which both amplitudes share up to O(g k / N). Component 2 carries the
// accumulated global phase, so the lab-frame state is recovered exactly.
using FrameVector = Eigen::Vector3cd;

FrameVector to_frame(const SubspaceState& y) {
  return FrameVector(y(0), y(1), 0.0);
}

SubspaceState from_frame(const FrameVector& z) {
  const std::complex<double> phase = std::polar(1.0, z(2).real());
  return SubspaceState(phase * z(0), phase * z(1));
}

SubspaceState amplitudes(const FrameVector& z) { return SubspaceState(z(0), z(1)); }

FrameVector frame_rhs(const FrameVector& z, const ProblemInstance& inst) {
  const Eigen::Matrix2d m = generator<double>(std::norm(z(0)), inst);
  const std::complex<double> i(0.0, 1.0);
  return FrameVector(i * ((m(0, 0) - m(1, 1)) * z(0) + m(0, 1) * z(1)), i * (m(1, 0) * z(0)),
                     m(1, 1));
}

struct PendingCrossing {
  double target;
  EventKind kind;
  bool found = false;
};

}  // namespace

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::FirstPeak: return "FirstPeak";
    case EventKind::CrossingUp: return "CrossingUp";
    case EventKind::HalfPlateau: return "HalfPlateau";
    case EventKind::PlateauDetected: return "PlateauDetected";
  }
  return "?";
}

std::optional<EventRecord> Trajectory::find(EventKind kind) const {
  for (const auto& e : events)
    if (e.kind == kind) return e;
  return std::nullopt;
}

std::optional<EventRecord> Trajectory::crossing(double target) const {
  for (const auto& e : events)
    if ((e.kind == EventKind::CrossingUp || e.kind == EventKind::HalfPlateau) &&
        e.target == target)
      return e;
  return std::nullopt;
}

double Trajectory::max_x() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.x);
  for (const auto& e : events) m = std::max(m, e.x);
  return m;
}

double Trajectory::max_norm_err() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.norm_err);
  return m;
}

Trajectory integrate(const ProblemInstance& instance, const IntegratorConfig& config,
                     const EventRequest& request) {
  return integrate_from(instance, uniform_state(validate(instance)), config, request);
}

Trajectory integrate_from(const ProblemInstance& instance, const SubspaceState& initial,
                          const IntegratorConfig& config, const EventRequest& request) {
  const auto inst = validate(instance);
  config.check();

  Trajectory traj;
  traj.instance = inst;

  std::vector<PendingCrossing> crossings;
  for (double target : request.crossings) {
    if (!(target > success_probability(initial) && target <= 1.0))
      throw DomainError("crossing target " + std::to_string(target) +
                        " must lie in (x(0), 1]");
    crossings.push_back({target, EventKind::CrossingUp});
  }
  if (regime(inst).kind == Regime::Plateau) {
    const double half = 0.5 * stationary_roots(inst).x_plus;
    if (half > success_probability(initial)) crossings.push_back({half, EventKind::HalfPlateau});
  }

  auto f = [&inst](double, const FrameVector& z) { return frame_rhs(z, inst); };
  Dop853 solver(f, config, 0.0, to_frame(initial));

  traj.samples.push_back(make_sample(0.0, initial, inst));
  std::int64_t next_sample = 1;
  bool peak_found = false;
  bool plateau_found = false;
  double plateau_window_start = -1.0;

  auto resolved = [&] {
    const bool all_crossings =
        std::all_of(crossings.begin(), crossings.end(), [&](const PendingCrossing& c) {
          return c.found || c.kind == EventKind::HalfPlateau;
        });
    return all_crossings && (!request.require_terminal || peak_found || plateau_found);
  };
  auto fail_norm = [&](double t, double err) {
    throw NormDriftError("norm drift " + std::to_string(err) + " exceeds tolerance at t=" +
                             std::to_string(t) + " for " + describe(inst),
                         traj);
  };

  SubspaceState y_prev = initial;
  while (solver.time() < config.t_max) {
    const auto& seg = solver.step(config.t_max);
    const double t0 = seg.t0(), t1 = seg.t1();
    const SubspaceState y1 = from_frame(solver.state());

    auto x_at = [&seg](double t) { return std::norm(seg(t)(0)); };
    auto rate_at = [&seg, &inst](double t) {
      return success_rate<double>(amplitudes(seg(t)), inst);
    };

    // Dense samples on the fixed grid j * sample_dt.
    for (;;) {
      const double ts = static_cast<double>(next_sample) * config.sample_dt;
      if (ts > t1 || ts > config.t_max) break;
      const Sample s = make_sample(ts, ts == t1 ? y1 : from_frame(seg(ts)), inst);
      traj.samples.push_back(s);
      if (s.norm_err > inst.norm_tol) fail_norm(ts, s.norm_err);
      ++next_sample;
    }
    const double step_norm_err = norm_error(y1);
    if (step_norm_err > inst.norm_tol) fail_norm(t1, step_norm_err);

    const double x0 = success_probability(y_prev);
    const double x1 = success_probability(y1);
    const double rate0 = success_rate<double>(y_prev, inst);
    const double rate1 = success_rate<double>(y1, inst);

    double peak_t = -1.0;
    if (!peak_found && rate0 > 0.0 && rate1 < 0.0 &&
        std::max(std::abs(rate0), std::abs(rate1)) > kPeakRateFloor) {
      peak_t = bisect(rate_at, t0, t1);
      peak_found = true;
      traj.events.push_back({EventKind::FirstPeak, peak_t, x_at(peak_t)});
    }

    for (auto& c : crossings) {
      if (c.found) continue;
      const double te = peak_t >= 0.0 ? peak_t : t1;
      const double xe = peak_t >= 0.0 ? x_at(peak_t) : x1;
      double tc = -1.0;
      // A target at the peak height is met tangentially; round-off in x would
      // move a bisected root far from the maximum.
      if (peak_t >= 0.0 && std::abs(xe - c.target) < 1e-9) {
        tc = peak_t;
      } else if (x0 < c.target && xe >= c.target) {
        tc = bisect([&](double t) { return x_at(t) - c.target; }, t0, te);
      }
      if (tc >= 0.0) {
        c.found = true;
        traj.events.push_back({c.kind, tc, x_at(tc), c.target});
      }
    }

    if (!plateau_found) {
      const double gamma_n = effective_rate<double>(x1, inst);
      if (std::abs(rate1) < request.plateau.rate_tol &&
          std::abs(gamma_n) < request.plateau.gamma_n_tol) {
        if (plateau_window_start < 0.0) plateau_window_start = t1;
        if (t1 - plateau_window_start >= request.plateau.window) {
          plateau_found = true;
          traj.events.push_back({EventKind::PlateauDetected, t1, x1});
        }
      } else {
        plateau_window_start = -1.0;
      }
    }

    y_prev = y1;
    if (request.stop_when_resolved && resolved()) {
      if (traj.samples.back().t < t1) traj.samples.push_back(make_sample(t1, y1, inst));
      return traj;
    }
  }

  const bool crossings_done = std::all_of(
      crossings.begin(), crossings.end(), [](const PendingCrossing& c) {
        return c.found || c.kind == EventKind::HalfPlateau;
      });
  if (!crossings_done || (request.require_terminal && !peak_found && !plateau_found))
    throw HorizonError("requested event not found before t_max=" +
                           std::to_string(config.t_max) + " for " + describe(inst),
                       traj);
  return traj;
}

double time_to_probability_numeric(const ProblemInstance& instance, double x_target,
                                   IntegratorConfig config) {
  const auto inst = validate(instance);
  const double x0 = static_cast<double>(inst.k) / static_cast<double>(inst.N);
  if (!(x_target > x0 && x_target <= 1.0))
    throw DomainError("x_target must lie in (k/N, 1]");
  if (regime(inst).kind == Regime::Plateau) {
    const double xp = stationary_roots(inst).x_plus;
    if (x_target >= xp)
      throw UnreachableError("x_target " + std::to_string(x_target) +
                             " is at or above the plateau height " + std::to_string(xp));
  }
  EventRequest request;
  request.crossings = {x_target};
  request.stop_when_resolved = true;
  config.sample_dt = std::min(config.sample_dt, config.t_max);

  // Stop at the first peak too, so an unreachable peak target fails fast.
  auto traj = [&] {
    try {
      return integrate(inst, config, request);
    } catch (const HorizonError& e) {
      const auto peak = e.partial().find(EventKind::FirstPeak);
      if (peak && peak->x < x_target)
        throw UnreachableError("x_target " + std::to_string(x_target) +
                               " exceeds the peak maximum " + std::to_string(peak->x));
      throw;
    }
  }();
  const auto hit = traj.crossing(x_target);
  const auto peak = traj.find(EventKind::FirstPeak);
  if (!hit || (peak && peak->t < hit->t))
    throw UnreachableError("x_target " + std::to_string(x_target) + " not reached");
  return hit->t;
}

}  // namespace nlwalk
