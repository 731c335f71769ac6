#ifndef NLWALK_VERIFY_HPP
#define NLWALK_VERIFY_HPP

#include <string>
#include <vector>

#include "nlwalk/core.hpp"

namespace nlwalk {

struct SuiteCase {
  std::string label;
  double residual = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  double tolerance = 0.0;
  double max_residual = 0.0;
  bool pass = false;
  std::vector<SuiteCase> cases;
};

/// Twenty instances with N <= 1024, seven sharp, six wide, seven plateau.
std::vector<ProblemInstance> oracle_instances();

/// Full-space vs subspace x(t) over t in [0, 10]; tolerance 1e-8.
SuiteReport oracle_suite(int workers = 1);

/// (instance, x) pairs for the closed form vs quadrature check: ten instances
/// across all regimes, five probabilities each.
struct TimePoint {
  ProblemInstance instance;
  double x = 0.0;
};
std::vector<TimePoint> analytic_grid();

/// Relative difference of analytic_time and quadrature_time; tolerance 1e-8.
SuiteReport analytic_suite(int workers = 1);

/// For each plateau instance: the stationary residual and gamma N at x_plus
/// (tolerance 1e-9), and the drift max |x(t) - x_plus| over t in [0, 10]
/// when started at x_plus (tolerance 1e-6).
SuiteReport fixed_point_suite(int workers = 1);

/// "oracle", "analytic", "fixed-point" or "all".
std::vector<SuiteReport> run_suites(const std::string& name, int workers = 1);

}  // namespace nlwalk

#endif  // NLWALK_VERIFY_HPP
