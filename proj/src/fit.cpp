#include "nlwalk/fit.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "nlwalk/errors.hpp"

namespace nlwalk {

FitResult fit_power(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw DegenerateFitError("fit_power: size mismatch");
  if (xs.size() < 2) throw DegenerateFitError("fit_power: need at least two points");
  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd logy(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = xs[static_cast<std::size_t>(i)];
    const double y = ys[static_cast<std::size_t>(i)];
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
      throw DegenerateFitError("fit_power: non-positive or non-finite value");
    design(i, 0) = std::log(x);
    design(i, 1) = 1.0;
    logy(i) = std::log(y);
  }
  if (design.col(0).maxCoeff() == design.col(0).minCoeff())
    throw DegenerateFitError("fit_power: all abscissae equal");

  const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(logy);
  const Eigen::VectorXd residual = logy - design * beta;
  const double ss_res = residual.squaredNorm();
  const double ss_tot = (logy.array() - logy.mean()).matrix().squaredNorm();

  FitResult fit;
  fit.exponent = beta(0);
  fit.coefficient = std::exp(beta(1));
  fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  fit.points = static_cast<int>(n);
  return fit;
}

}  // namespace nlwalk
