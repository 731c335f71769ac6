// Independent reference computations used only by the tests.
#ifndef NLWALK_TEST_ORACLES_HPP
#define NLWALK_TEST_ORACLES_HPP

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "nlwalk/core.hpp"

namespace oracle {

// Tanh-sinh quadrature on [a, b]. f receives (x, x - a, b - x) so endpoint
// singularities can be evaluated without cancellation.
template <typename F>
double tanh_sinh(F f, double a, double b, double tol = 1e-14) {
  const double half = 0.5 * (b - a);
  const double pi2 = std::numbers::pi / 2;
  auto term = [&](double t) {
    const double s = pi2 * std::sinh(t);
    const double w = pi2 * std::cosh(t) / (std::cosh(s) * std::cosh(s));
    // 1 - tanh(s) and 1 + tanh(s) without cancellation.
    const double em = 2.0 / (std::exp(2.0 * s) + 1.0);
    const double ep = 2.0 / (std::exp(-2.0 * s) + 1.0);
    double sum = 0.0;
    const double da_right = half * ep, db_right = half * em;
    if (db_right > 0.0 && da_right > 0.0) sum += w * f(b - db_right, da_right, db_right);
    const double da_left = half * em, db_left = half * ep;
    if (t != 0.0 && da_left > 0.0 && db_left > 0.0) sum += w * f(a + da_left, da_left, db_left);
    return sum;
  };
  const double t_max = 6.5;
  double h = 0.5;
  double sum = 0.0;
  for (double t = 0.0; t <= t_max; t += h) sum += term(t);
  double estimate = half * h * sum;
  for (int level = 0; level < 12; ++level) {
    h *= 0.5;
    double fresh = 0.0;
    for (double t = h; t <= t_max; t += 2 * h) fresh += term(t);
    sum += fresh;
    const double next = half * h * sum;
    if (std::abs(next - estimate) <= tol * std::abs(next)) return next;
    estimate = next;
  }
  return estimate;
}

// Time for the success probability to reach x, integrating
// dx / [(2 sqrt(k)/N) D(x) sqrt((1-x)(Nx-k))] directly in x.
inline double time_in_x(const nlwalk::ProblemInstance& inst, double x) {
  const double N = static_cast<double>(inst.N);
  const double k = static_cast<double>(inst.k);
  const double a = k / N;
  auto integrand = [&](double xv, double from_a, double to_b) {
    const double one_minus_x = (x == 1.0) ? to_b : 1.0 - xv;
    const double d = 1.0 + inst.g * (nlwalk::nonlinearity(xv / k, inst.h) -
                                     nlwalk::nonlinearity((1.0 - xv) / (N - k), inst.h));
    return 1.0 / ((2.0 * std::sqrt(k) / N) * d * std::sqrt(one_minus_x * N * from_a));
  };
  return tanh_sinh(integrand, a, x);
}

// Linear walk (g = 0): exp(i H t) psi0 by dense eigendecomposition of
// H = |s><s| + sum over marked |i><i| (gamma N = 1).
inline Eigen::VectorXcd linear_evolution(int n, const std::vector<int>& marked, double t) {
  Eigen::MatrixXd H = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  for (int i : marked) H(i, i) += 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  const Eigen::VectorXcd psi0 = Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(double(n)));
  const Eigen::MatrixXcd V = es.eigenvectors().cast<std::complex<double>>();
  Eigen::VectorXcd phases(n);
  for (int j = 0; j < n; ++j) phases(j) = std::polar(1.0, es.eigenvalues()(j) * t);
  return V * phases.asDiagonal() * V.adjoint() * psi0;
}

}  // namespace oracle

#endif  // NLWALK_TEST_ORACLES_HPP
