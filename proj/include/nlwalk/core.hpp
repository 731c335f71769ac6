#ifndef NLWALK_CORE_HPP
#define NLWALK_CORE_HPP

#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "nlwalk/errors.hpp"

namespace nlwalk {

/// Search on the complete graph of N vertices with k marked vertices, evolving
/// under the cubic-quintic self-potential g (p - h p^2). Units have hbar = 1.
struct ProblemInstance {
  std::int64_t N = 0;
  std::int64_t k = 0;
  double g = 0.0;
  double h = 0.0;
  double norm_tol = 1e-9;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

/// Returns the instance unchanged, or throws DomainError naming the violated
/// constraint. 2k >= N is rejected: the stationary-root quadratic divides by
/// N - 2k.
ProblemInstance validate(const ProblemInstance& instance);

std::string describe(const ProblemInstance& instance);

/// Cubic-quintic nonlinearity f(p) = p - h p^2.
template <typename Scalar>
constexpr Scalar nonlinearity(Scalar p, Scalar h) {
  return p - h * p * p;
}

/// Self-potential strengths per marked/unmarked vertex and the critical
/// jumping rate derived from them.
template <typename Scalar>
struct NonlinearStrengths {
  Scalar f_alpha;
  Scalar f_beta;
  Scalar gamma_c;
};

/// Evaluates f_alpha = f(x/k), f_beta = f((1-x)/(N-k)) and
/// gamma_c = [1 + g (f_alpha - f_beta)] / N at success probability x.
template <typename Scalar>
NonlinearStrengths<Scalar> strengths(Scalar x, const ProblemInstance& instance) {
  const Scalar N = static_cast<Scalar>(instance.N);
  const Scalar k = static_cast<Scalar>(instance.k);
  const Scalar g = static_cast<Scalar>(instance.g);
  const Scalar h = static_cast<Scalar>(instance.h);
  NonlinearStrengths<Scalar> s;
  s.f_alpha = nonlinearity<Scalar>(x / k, h);
  s.f_beta = nonlinearity<Scalar>((Scalar(1) - x) / (N - k), h);
  s.gamma_c = (Scalar(1) + g * (s.f_alpha - s.f_beta)) / N;
  return s;
}

/// 1 + g (f_alpha - f_beta): gamma_c scaled by N. Vanishes at the plateau root.
template <typename Scalar>
Scalar effective_rate(Scalar x, const ProblemInstance& instance) {
  return strengths<Scalar>(x, instance).gamma_c * static_cast<Scalar>(instance.N);
}

/// Amplitudes (alpha, beta) of the normalized marked and unmarked uniform
/// superpositions.
template <typename Scalar>
using SubspaceVector = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

using SubspaceState = SubspaceVector<double>;

template <typename Scalar>
Scalar success_probability(const SubspaceVector<Scalar>& state) {
  return std::norm(state(0));
}

template <typename Scalar>
Scalar norm_error(const SubspaceVector<Scalar>& state) {
  using std::abs;
  return abs(std::norm(state(0)) + std::norm(state(1)) - Scalar(1));
}

/// Uniform superposition over all N vertices, alpha = sqrt(k/N).
SubspaceState uniform_state(const ProblemInstance& instance);

enum class Regime { SharpPeak, WidePeak, Plateau };

struct RegimeLabel {
  Regime kind = Regime::SharpPeak;
  // |h - h_c| / h_c < 1e-6.
  bool boundary_note = false;
};

const char* to_string(Regime regime);

}  // namespace nlwalk

#endif  // NLWALK_CORE_HPP
