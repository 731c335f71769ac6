#ifndef NLWALK_ANALYTICS_HPP
#define NLWALK_ANALYTICS_HPP

#include <cstdint>
#include <optional>
#include <span>

#include "nlwalk/core.hpp"
#include "nlwalk/fit.hpp"

namespace nlwalk {

/// h_c = k (1 + k/g): peaks below, plateaus at and above. +inf when g = 0.
double critical_h(std::int64_t k, double g);

/// Relative distance |h - h_c| / h_c below which an instance is flagged as
/// sitting on the peak/plateau boundary.
inline constexpr double kBoundaryTolerance = 1e-6;

/// Roots of the quadratic on which gamma_c vanishes, exact and to leading
/// order in large N.
struct StationaryRoots {
  double x_plus = 0.0;
  double x_minus = 0.0;
  double x_plus_large_n = 0.0;
  double x_minus_large_n = 0.0;
};

/// Requires g > 0 and h > 0.
StationaryRoots stationary_roots(const ProblemInstance& instance);

/// Residual of the stationary quadratic at x, divided by its largest
/// coefficient magnitude.
double stationary_residual(const ProblemInstance& instance, double x);

/// Coefficients of the time integrand's denominator a x^2 + b x + c, with the
/// derived Delta = b^2 - 4ac, Sigma = a + b + c and xi = 2ak + 2cN + b(N + k)
/// computed from the raw coefficients.
struct QuadraticCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double Delta = 0.0;
  double Sigma = 0.0;
  double xi = 0.0;
};

QuadraticCoefficients quadratic_coefficients(const ProblemInstance& instance);

/// Delta, Sigma and xi from their factored closed forms (a, b, c raw).
QuadraticCoefficients factored_coefficients(const ProblemInstance& instance);

RegimeLabel regime(const ProblemInstance& instance);

/// Asymptotic runtime classes for peaks with h <= k.
enum class ScalingClass {
  WideStrong,   // h = k, g >> h: sqrt(N/g)
  WideWeak,     // h = k, g << h: sqrt(N/k)
  SharpStrong,  // h < k, g >> h, g >> k: sqrt(N/g)
  SharpMid,     // h < k, g >> h, g << k: sqrt(N/k)
  SharpWeak,    // h < k, g << h: sqrt(N/k)
};

enum class ScalingStatus { Assigned, Ambiguous, NotApplicable };

const char* to_string(ScalingClass scaling);
/// Parameter ordering defining the class, e.g. "h<k; g>>h; g>>k".
const char* condition(ScalingClass scaling);
/// "sqrt(N/g)" or "sqrt(N/k)".
const char* runtime_law(ScalingClass scaling);
/// Expected exponents of t_* in (N, g, k) for a class.
struct ScalingExponents {
  double n;
  double g;
  double k;
};
ScalingExponents exponents(ScalingClass scaling);

inline constexpr double kDefaultDominance = 100.0;
inline constexpr double kDefaultEpsilon = 0.01;

struct Classification {
  RegimeLabel regime;
  ScalingStatus status = ScalingStatus::NotApplicable;
  std::optional<ScalingClass> scaling;
  // k < h < h_c: the h = k class is reused for the runtime estimate.
  bool extrapolated_from_h_equals_k = false;
};

/// Regime plus asymptotic class, "a >> b" meaning a / b >= dominance. An
/// ambiguous class is reported through the status, never guessed.
Classification classify(const ProblemInstance& instance, double dominance = kDefaultDominance);

/// Throws AmbiguousScalingError or RegimeError where classify() would report
/// a status other than Assigned.
ScalingClass scaling_class(const ProblemInstance& instance, double dominance = kDefaultDominance);

/// Time at which the success probability first reaches x, from the numerical
/// quadrature of the time integral (substituting x = k/N cos^2 + sin^2 to
/// remove the endpoint singularities).
double quadrature_time(const ProblemInstance& instance, double x);

/// Two-arctangent closed form, evaluated in complex arithmetic so peaks and
/// plateaus share one code path. Falls back to quadrature_time when g = 0,
/// h = 0, or the instance sits on the boundary. Throws BranchError when the
/// imaginary residue exceeds 1e-8.
double analytic_time(const ProblemInstance& instance, double x);

/// Runtime to reach x = 1 (both arctangents equal pi/2). RegimeError when
/// h >= h_c.
double runtime_peak(const ProblemInstance& instance);

/// Time to reach x_plus / 2. RegimeError when h < h_c.
double time_to_half_plateau(const ProblemInstance& instance);

/// Peak width at height 1 - epsilon. RegimeError when h >= h_c, where the
/// width is infinite.
double peak_width(const ProblemInstance& instance, double epsilon = kDefaultEpsilon);

enum class Axis { N, k, g, h, hk };

const char* to_string(Axis axis);
Axis parse_axis(const std::string& name);
double axis_value(const ProblemInstance& instance, Axis axis);
ProblemInstance with_axis(ProblemInstance instance, Axis axis, double value);

/// Log-log exponent of peak_width along a one-parameter family.
FitResult width_scaling(std::span<const ProblemInstance> family, Axis axis,
                        double epsilon = kDefaultEpsilon);

struct AnalyticSummary {
  ProblemInstance instance;
  double epsilon = kDefaultEpsilon;
  double dominance = kDefaultDominance;
  double h_c = 0.0;
  std::optional<StationaryRoots> roots;
  // Exact x_plus when the regime is Plateau; min(1, x_plus) on the peak side
  // of the boundary.
  std::optional<double> plateau_height;
  std::optional<double> width;
  bool width_infinite = false;
  // Present iff the regime is not Plateau, except on the boundary where both
  // t_star (diverging) and t_half are reported.
  std::optional<double> t_star;
  std::optional<double> t_half;
  Classification classification;
};

AnalyticSummary summarize(const ProblemInstance& instance, double epsilon = kDefaultEpsilon,
                          double dominance = kDefaultDominance);

}  // namespace nlwalk

#endif  // NLWALK_ANALYTICS_HPP
