#ifndef NLWALK_QUADRATURE_HPP
#define NLWALK_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "nlwalk/errors.hpp"

namespace nlwalk {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

struct GkSegment {
  double a, b, value, error;
  bool operator<(const GkSegment& other) const { return error < other.error; }
};

template <typename F>
GkSegment gauss_kronrod15(F& f, double a, double b) {
  static constexpr std::array<double, 8> xk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * wk[7];
  double gauss = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += wk[j] * sum;
    if (j % 2 == 1) gauss += wg[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7, 15) quadrature on [a, b]. Splits the
/// interval with the largest error estimate until the total estimate meets
/// max(abs_tol, rel_tol |I|).
template <typename F>
QuadratureResult integrate_adaptive(F f, double a, double b, double rel_tol = 1e-13,
                                    double abs_tol = 0.0, int max_intervals = 20000) {
  std::vector<detail::GkSegment> segments{detail::gauss_kronrod15(f, a, b)};
  double value = segments.front().value;
  double error = segments.front().error;
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (static_cast<int>(segments.size()) >= max_intervals)
      throw NumericalError("adaptive quadrature did not converge");
    auto worst = std::max_element(segments.begin(), segments.end());
    const double lo = worst->a, hi = worst->b, mid = 0.5 * (lo + hi);
    *worst = detail::gauss_kronrod15(f, lo, mid);
    segments.push_back(detail::gauss_kronrod15(f, mid, hi));
    value = 0.0;
    error = 0.0;
    for (const auto& s : segments) {
      value += s.value;
      error += s.error;
    }
  }
  return {value, error, static_cast<int>(segments.size())};
}

}  // namespace nlwalk

#endif  // NLWALK_QUADRATURE_HPP
