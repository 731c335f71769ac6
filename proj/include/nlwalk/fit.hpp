#ifndef NLWALK_FIT_HPP
#define NLWALK_FIT_HPP

#include <span>

namespace nlwalk {

/// y ~ coefficient * x^exponent, fitted by least squares in log-log space.
struct FitResult {
  double exponent = 0.0;
  double coefficient = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

/// Throws DegenerateFitError when any value is non-positive, fewer than two
/// points are given, or all abscissae coincide.
FitResult fit_power(std::span<const double> xs, std::span<const double> ys);

}  // namespace nlwalk

#endif  // NLWALK_FIT_HPP
