#include "nlwalk/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "nlwalk/quadrature.hpp"

namespace nlwalk {

namespace {

using Complex = std::complex<double>;

constexpr double kBranchTolerance = 1e-8;

// Principal square root of a real number; negative inputs map to +i sqrt|v|.
Complex csqrt(double v) { return std::sqrt(Complex(v, 0.0)); }

double dominance_ratio(double a, double b) {
  if (b == 0.0) return a > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  return a / b;
}

bool is_boundary(const ProblemInstance& inst) {
  if (inst.g == 0.0) return false;
  const double hc = critical_h(inst.k, inst.g);
  return std::abs(inst.h - hc) / hc < kBoundaryTolerance;
}

bool plateaus(const ProblemInstance& inst) {
  return inst.g > 0.0 && inst.h >= critical_h(inst.k, inst.g);
}

void check_probability(const ProblemInstance& inst, double x) {
  const double x0 = static_cast<double>(inst.k) / static_cast<double>(inst.N);
  if (!(x >= x0 && x <= 1.0))
    throw DomainError("success probability " + std::to_string(x) + " outside [k/N, 1]");
  if (plateaus(inst)) {
    const double xp = stationary_roots(inst).x_plus;
    if (x >= xp)
      throw UnreachableError("x = " + std::to_string(x) + " is at or above the plateau height " +
                             std::to_string(xp));
  }
}

// Closed-form time to reach x. Requires g > 0, h > 0 and a non-boundary
// instance.
double closed_form_time(const ProblemInstance& inst, double x) {
  const double N = static_cast<double>(inst.N);
  const double k = static_cast<double>(inst.k);
  const double g = inst.g;
  const double h = inst.h;

  const double sigma_core = k * k + g * (k - h);
  const double Sigma = (N - k) * (N - k) * sigma_core;
  const double a = -g * h * N * (N - 2.0 * k);
  const double sB = std::sqrt(g * g * (N - 2.0 * h) * (N - 2.0 * h) +
                              4.0 * g * h * N * (N - 2.0 * k));
  const double A1 = 2.0 * N * k + g * (N - 2.0 * h);
  const double scale = k * (N - k) * (N - k);

  // xi -/+ sqrt(Delta)(N - k). The difference is rewritten through
  // A1^2 - sB^2 = 4 N^2 sigma_core to avoid cancellation.
  const double minus_bracket =
      A1 + sB > 0.0 ? 4.0 * N * N * sigma_core / (A1 + sB) : A1 - sB;
  const double D1 = scale * minus_bracket;
  const double D2 = scale * (A1 + sB);

  // 2a + b +/- sqrt(Delta) with (2a+b+sqrtD)(-2a-b+sqrtD) = -4 a Sigma.
  const double u = g * (k * N - 2.0 * h * (N - k));
  const double w = k * sB;
  const double product = -4.0 * a * Sigma;
  double n1, n2;
  if (u >= 0.0) {
    n1 = (N - k) * (u + w);
    n2 = product / n1;
  } else {
    n2 = (N - k) * (w - u);
    n1 = product / n2;
  }

  const Complex prefactor = N * k * (N - k) * std::numbers::sqrt2 /
                            (2.0 * std::sqrt(k) * csqrt(Sigma) * sB);
  const Complex z1 = csqrt(2.0 * Sigma / D1);
  const Complex z2 = csqrt(2.0 * Sigma / D2);

  Complex arc1, arc2;
  if (x >= 1.0) {
    if (z1.imag() != 0.0 || z2.imag() != 0.0)
      throw BranchError("x = 1 with imaginary arctangent arguments");
    arc1 = arc2 = Complex(std::numbers::pi / 2.0, 0.0);
  } else {
    const double r = std::sqrt((N * x - k) / (1.0 - x));
    arc1 = std::atan(z1 * r);
    arc2 = std::atan(z2 * r);
  }
  const Complex t = prefactor * (n1 / csqrt(D1) * arc1 + n2 / csqrt(D2) * arc2);
  if (std::abs(t.imag()) > kBranchTolerance * std::max(1.0, std::abs(t.real())) ||
      !std::isfinite(t.real()))
    throw BranchError("closed-form time has imaginary residue " + std::to_string(t.imag()) +
                      " for " + describe(inst));
  return t.real();
}

}  // namespace

double critical_h(std::int64_t k, double g) {
  if (g == 0.0) return std::numeric_limits<double>::infinity();
  const double kk = static_cast<double>(k);
  return kk * (1.0 + kk / g);
}

StationaryRoots stationary_roots(const ProblemInstance& instance) {
  const auto inst = validate(instance);
  if (!(inst.g > 0.0) || !(inst.h > 0.0))
    throw DomainError("stationary roots require g > 0 and h > 0");
  const double N = static_cast<double>(inst.N);
  const double k = static_cast<double>(inst.k);
  const double g = inst.g;
  const double h = inst.h;

  const double disc = (N - 2.0 * h) * (N - 2.0 * h) + 4.0 * h * N * (N - 2.0 * k) / g;
  if (!(disc > 0.0)) throw NumericalError("stationary quadratic has no real roots");
  const double A = h * N * (N - 2.0 * k);
  const double minusB = k * N * (N - k) - 2.0 * h * k * k;
  const double C = k * k * (N - k - h) - k * k * (N - k) * (N - k) / g;
  const double root = k * (N - k) * std::sqrt(disc);

  StationaryRoots r;
  // Larger-magnitude root first, the other from the product C / A.
  if (minusB >= 0.0) {
    r.x_plus = (minusB + root) / (2.0 * A);
    r.x_minus = C / (A * r.x_plus);
  } else {
    r.x_minus = (minusB - root) / (2.0 * A);
    r.x_plus = C / (A * r.x_minus);
  }
  const double s = std::sqrt((g + 4.0 * h) / g);
  r.x_plus_large_n = (1.0 + s) * k / (2.0 * h);
  r.x_minus_large_n = (1.0 - s) * k / (2.0 * h);
  return r;
}

double stationary_residual(const ProblemInstance& inst, double x) {
  const double N = static_cast<double>(inst.N);
  const double k = static_cast<double>(inst.k);
  const double A = inst.h * N * (N - 2.0 * k);
  const double B = -(k * N * (N - k) - 2.0 * inst.h * k * k);
  const double C = k * k * (N - k - inst.h) - k * k * (N - k) * (N - k) / inst.g;
  const double largest = std::max({std::abs(A), std::abs(B), std::abs(C)});
  return (A * x * x + B * x + C) / largest;
}

QuadraticCoefficients quadratic_coefficients(const ProblemInstance& inst) {
  const double N = static_cast<double>(inst.N);
  const double k = static_cast<double>(inst.k);
  const double g = inst.g;
  const double h = inst.h;
  QuadraticCoefficients q;
  q.a = -g * h * N * (N - 2.0 * k);
  q.b = g * k * (N * N - k * N - 2.0 * h * k);
  q.c = -g * k * k * (N - k - h) + k * k * (N - k) * (N - k);
  q.Delta = q.b * q.b - 4.0 * q.a * q.c;
  q.Sigma = q.a + q.b + q.c;
  q.xi = 2.0 * q.a * k + 2.0 * q.c * N + q.b * (N + k);
  return q;
}

QuadraticCoefficients factored_coefficients(const ProblemInstance& inst) {
  const double N = static_cast<double>(inst.N);
  const double k = static_cast<double>(inst.k);
  const double g = inst.g;
  const double h = inst.h;
  QuadraticCoefficients q = quadratic_coefficients(inst);
  q.Delta = k * k * (N - k) * (N - k) *
            (g * g * (N - 2.0 * h) * (N - 2.0 * h) + 4.0 * g * h * N * (N - 2.0 * k));
  q.Sigma = (N - k) * (N - k) * (k * k + g * (k - h));
  q.xi = k * (N - k) * (N - k) * (2.0 * N * k + g * (N - 2.0 * h));
  return q;
}

RegimeLabel regime(const ProblemInstance& instance) {
  const auto inst = validate(instance);
  RegimeLabel label;
  const double k = static_cast<double>(inst.k);
  if (plateaus(inst))
    label.kind = Regime::Plateau;
  else if (inst.h < k)
    label.kind = Regime::SharpPeak;
  else
    label.kind = Regime::WidePeak;
  label.boundary_note = is_boundary(inst);
  return label;
}

const char* to_string(ScalingClass scaling) {
  switch (scaling) {
    case ScalingClass::WideStrong: return "WideStrong";
    case ScalingClass::WideWeak: return "WideWeak";
    case ScalingClass::SharpStrong: return "SharpStrong";
    case ScalingClass::SharpMid: return "SharpMid";
    case ScalingClass::SharpWeak: return "SharpWeak";
  }
  return "?";
}

const char* condition(ScalingClass scaling) {
  switch (scaling) {
    case ScalingClass::WideStrong: return "h=k; g>>h";
    case ScalingClass::WideWeak: return "h=k; g<<h";
    case ScalingClass::SharpStrong: return "h<k; g>>h; g>>k";
    case ScalingClass::SharpMid: return "h<k; g>>h; g<<k";
    case ScalingClass::SharpWeak: return "h<k; g<<h";
  }
  return "?";
}

const char* runtime_law(ScalingClass scaling) {
  switch (scaling) {
    case ScalingClass::WideStrong:
    case ScalingClass::SharpStrong: return "sqrt(N/g)";
    default: return "sqrt(N/k)";
  }
}

ScalingExponents exponents(ScalingClass scaling) {
  switch (scaling) {
    case ScalingClass::WideStrong:
    case ScalingClass::SharpStrong: return {0.5, -0.5, 0.0};
    default: return {0.5, 0.0, -0.5};
  }
}

Classification classify(const ProblemInstance& instance, double dominance) {
  const auto inst = validate(instance);
  Classification c;
  c.regime = regime(inst);
  if (c.regime.kind == Regime::Plateau) return c;

  const double k = static_cast<double>(inst.k);
  const double g = inst.g;
  const double h = inst.h;
  const bool h_equals_k = std::abs(h - k) <= 1e-12 * k;
  std::optional<ScalingClass> cls;
  if (h_equals_k || h > k) {
    c.extrapolated_from_h_equals_k = !h_equals_k;
    if (g == 0.0 || dominance_ratio(h, g) >= dominance)
      cls = ScalingClass::WideWeak;
    else if (dominance_ratio(g, h) >= dominance)
      cls = ScalingClass::WideStrong;
  } else if (g == 0.0) {
    cls = ScalingClass::SharpWeak;
  } else if (dominance_ratio(g, h) >= dominance) {
    if (dominance_ratio(g, k) >= dominance)
      cls = ScalingClass::SharpStrong;
    else if (dominance_ratio(k, g) >= dominance)
      cls = ScalingClass::SharpMid;
  } else if (dominance_ratio(h, g) >= dominance) {
    cls = ScalingClass::SharpWeak;
  }
  c.scaling = cls;
  c.status = cls ? ScalingStatus::Assigned : ScalingStatus::Ambiguous;
  return c;
}

ScalingClass scaling_class(const ProblemInstance& instance, double dominance) {
  const auto c = classify(instance, dominance);
  if (c.status == ScalingStatus::NotApplicable)
    throw RegimeError("no peak runtime class for a plateauing instance");
  if (c.status == ScalingStatus::Ambiguous)
    throw AmbiguousScalingError("no dominance ratio reaches " + std::to_string(dominance) +
                                " for " + describe(instance));
  return *c.scaling;
}

double quadrature_time(const ProblemInstance& instance, double x) {
  const auto inst = validate(instance);
  check_probability(inst, x);
  const double N = static_cast<double>(inst.N);
  const double k = static_cast<double>(inst.k);
  const double x0 = k / N;
  const double theta_end = std::asin(std::sqrt(std::clamp((x - x0) / (1.0 - x0), 0.0, 1.0)));
  if (theta_end == 0.0) return 0.0;
  auto integrand = [&](double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double xt = x0 * c * c + s * s;
    return 1.0 / effective_rate<double>(xt, inst);
  };
  const auto result = integrate_adaptive(integrand, 0.0, theta_end, 1e-13);
  return std::sqrt(N / k) * result.value;
}

double analytic_time(const ProblemInstance& instance, double x) {
  const auto inst = validate(instance);
  check_probability(inst, x);
  if (x == static_cast<double>(inst.k) / static_cast<double>(inst.N)) return 0.0;
  if (inst.g == 0.0 || inst.h == 0.0 || is_boundary(inst)) return quadrature_time(inst, x);
  return closed_form_time(inst, x);
}

double runtime_peak(const ProblemInstance& instance) {
  const auto inst = validate(instance);
  if (plateaus(inst))
    throw RegimeError("h >= h_c: the success probability plateaus and never reaches 1");
  return analytic_time(inst, 1.0);
}

double time_to_half_plateau(const ProblemInstance& instance) {
  const auto inst = validate(instance);
  if (!plateaus(inst)) throw RegimeError("h < h_c: no plateau");
  return analytic_time(inst, 0.5 * stationary_roots(inst).x_plus);
}

double peak_width(const ProblemInstance& instance, double epsilon) {
  const auto inst = validate(instance);
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  if (plateaus(inst)) throw RegimeError("h >= h_c: the peak width is infinite");
  const double N = static_cast<double>(inst.N);
  const double k = static_cast<double>(inst.k);
  const double denom = 1.0 + (inst.g / k) * (1.0 - inst.h / k);
  return 2.0 * N / denom * std::sqrt(epsilon / (k * (N - k)));
}

const char* to_string(Axis axis) {
  switch (axis) {
    case Axis::N: return "N";
    case Axis::k: return "k";
    case Axis::g: return "g";
    case Axis::h: return "h";
    case Axis::hk: return "hk";
  }
  return "?";
}

Axis parse_axis(const std::string& name) {
  if (name == "N") return Axis::N;
  if (name == "k") return Axis::k;
  if (name == "g") return Axis::g;
  if (name == "h") return Axis::h;
  if (name == "hk") return Axis::hk;
  throw DomainError("unknown axis '" + name + "' (expected N, k, g, h or hk)");
}

double axis_value(const ProblemInstance& inst, Axis axis) {
  switch (axis) {
    case Axis::N: return static_cast<double>(inst.N);
    case Axis::k: return static_cast<double>(inst.k);
    case Axis::g: return inst.g;
    case Axis::h: return inst.h;
    case Axis::hk: return static_cast<double>(inst.k);
  }
  return 0.0;
}

ProblemInstance with_axis(ProblemInstance inst, Axis axis, double value) {
  auto as_integer = [&](double v) {
    if (v != std::floor(v) || !std::isfinite(v))
      throw DomainError(std::string("axis ") + to_string(axis) + " requires integer values");
    return static_cast<std::int64_t>(v);
  };
  switch (axis) {
    case Axis::N: inst.N = as_integer(value); break;
    case Axis::k: inst.k = as_integer(value); break;
    case Axis::g: inst.g = value; break;
    case Axis::h: inst.h = value; break;
    case Axis::hk:
      inst.k = as_integer(value);
      inst.h = value;
      break;
  }
  return inst;
}

FitResult width_scaling(std::span<const ProblemInstance> family, Axis axis, double epsilon) {
  std::vector<double> xs, ys;
  for (const auto& inst : family) {
    xs.push_back(axis_value(inst, axis));
    ys.push_back(peak_width(inst, epsilon));
  }
  return fit_power(xs, ys);
}

AnalyticSummary summarize(const ProblemInstance& instance, double epsilon, double dominance) {
  AnalyticSummary s;
  s.instance = validate(instance);
  s.epsilon = epsilon;
  s.dominance = dominance;
  s.h_c = critical_h(s.instance.k, s.instance.g);
  s.classification = classify(s.instance, dominance);
  const auto& label = s.classification.regime;
  if (s.instance.g > 0.0 && s.instance.h > 0.0) s.roots = stationary_roots(s.instance);

  if (label.kind == Regime::Plateau) {
    s.plateau_height = s.roots->x_plus;
    s.width_infinite = true;
    s.t_half = time_to_half_plateau(s.instance);
    if (label.boundary_note) s.t_star = std::numeric_limits<double>::infinity();
  } else {
    s.width = peak_width(s.instance, epsilon);
    if (label.boundary_note) {
      // Finite but beyond what either evaluation resolves; reported as diverging.
      s.t_star = std::numeric_limits<double>::infinity();
      if (s.roots) {
        s.plateau_height = std::min(1.0, s.roots->x_plus);
        s.t_half = analytic_time(s.instance, 0.5 * *s.plateau_height);
      }
    } else {
      s.t_star = runtime_peak(s.instance);
    }
  }
  return s;
}

}  // namespace nlwalk
