#ifndef NLWALK_DYNAMICS2D_HPP
#define NLWALK_DYNAMICS2D_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "nlwalk/core.hpp"
#include "nlwalk/dop853.hpp"

namespace nlwalk {

/// Real symmetric M in d(alpha, beta)/dt = i M (alpha, beta). The jumping rate
/// is the critical one evaluated at success probability x.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> generator(Scalar x, const ProblemInstance& instance) {
  using std::sqrt;
  const Scalar N = static_cast<Scalar>(instance.N);
  const Scalar k = static_cast<Scalar>(instance.k);
  const Scalar g = static_cast<Scalar>(instance.g);
  const auto s = strengths<Scalar>(x, instance);
  const Scalar coupling = s.gamma_c * sqrt(k) * sqrt(N - k);
  Eigen::Matrix<Scalar, 2, 2> m;
  m << s.gamma_c * k + Scalar(1) + g * s.f_alpha, coupling,
       coupling, s.gamma_c * (N - k) + g * s.f_beta;
  return m;
}

template <typename Scalar>
SubspaceVector<Scalar> rhs(const SubspaceVector<Scalar>& state, const ProblemInstance& instance) {
  const Eigen::Matrix<Scalar, 2, 2> m = generator<Scalar>(success_probability(state), instance);
  return std::complex<Scalar>(0, 1) * (m.template cast<std::complex<Scalar>>() * state);
}

/// dx/dt = -2 gamma sqrt(k (N-k)) Im(conj(alpha) beta); the diagonal of M
/// does not move probability.
template <typename Scalar>
Scalar success_rate(const SubspaceVector<Scalar>& state, const ProblemInstance& instance) {
  using std::sqrt;
  const Scalar N = static_cast<Scalar>(instance.N);
  const Scalar k = static_cast<Scalar>(instance.k);
  const Scalar gamma = strengths<Scalar>(success_probability(state), instance).gamma_c;
  return Scalar(-2) * gamma * sqrt(k * (N - k)) * std::imag(std::conj(state(0)) * state(1));
}

enum class EventKind { FirstPeak, CrossingUp, HalfPlateau, PlateauDetected };

const char* to_string(EventKind kind);

struct EventRecord {
  EventKind kind = EventKind::FirstPeak;
  double t = 0.0;
  double x = 0.0;
  // CrossingUp / HalfPlateau target; NaN otherwise.
  double target = std::numeric_limits<double>::quiet_NaN();
};

struct Sample {
  double t = 0.0;
  SubspaceState state;
  double x = 0.0;
  double gamma = 0.0;
  double norm_err = 0.0;
};

struct Trajectory {
  ProblemInstance instance;
  std::vector<Sample> samples;
  std::vector<EventRecord> events;

  std::optional<EventRecord> find(EventKind kind) const;
  std::optional<EventRecord> crossing(double target) const;
  double max_x() const;
  double max_norm_err() const;
};

/// Thresholds declaring a plateau: |dx/dt| < rate_tol and |gamma N| <
/// gamma_n_tol held for a window of the given length.
struct PlateauCriteria {
  double rate_tol = 1e-8;
  double gamma_n_tol = 1e-4;
  double window = 1.0;
};

struct EventRequest {
  std::vector<double> crossings;
  // FirstPeak or PlateauDetected must occur before t_max.
  bool require_terminal = false;
  // Stop as soon as every requested event has been found.
  bool stop_when_resolved = false;
  PlateauCriteria plateau;
};

class NormDriftError : public NumericalError {
public:
  NormDriftError(const std::string& what, Trajectory partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

private:
  Trajectory partial_;
};

class HorizonError : public NumericalError {
public:
  HorizonError(const std::string& what, Trajectory partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

private:
  Trajectory partial_;
};

/// Integrates from the uniform superposition. Events are refined by bisection
/// on the dense output to 1e-10 in t. A HalfPlateau crossing at x_plus / 2 is
/// tracked automatically for plateauing instances.
Trajectory integrate(const ProblemInstance& instance, const IntegratorConfig& config = {},
                     const EventRequest& request = {});

/// Same, from an arbitrary normalized initial state.
Trajectory integrate_from(const ProblemInstance& instance, const SubspaceState& initial,
                          const IntegratorConfig& config = {}, const EventRequest& request = {});

/// First time x(t) reaches x_target. Throws UnreachableError when the target
/// lies above the peak maximum or at/above the plateau height.
double time_to_probability_numeric(const ProblemInstance& instance, double x_target,
                                   IntegratorConfig config = {});

}  // namespace nlwalk

#endif  // NLWALK_DYNAMICS2D_HPP
