#include "nlwalk/core.hpp"

#include <cmath>
#include <sstream>

namespace nlwalk {

ProblemInstance validate(const ProblemInstance& instance) {
  if (instance.N < 3) throw DomainError("N < 3 unsupported");
  if (instance.k < 1) throw DomainError("k < 1: no marked vertices");
  if (2 * instance.k >= instance.N) throw DomainError("2k >= N unsupported");
  if (!std::isfinite(instance.g) || instance.g < 0.0)
    throw DomainError("g must be a finite non-negative real");
  if (!std::isfinite(instance.h) || instance.h < 0.0)
    throw DomainError("h must be a finite non-negative real");
  if (!(instance.norm_tol > 0.0)) throw DomainError("norm_tol must be positive");
  return instance;
}

std::string describe(const ProblemInstance& instance) {
  std::ostringstream os;
  os.precision(12);
  os << "N=" << instance.N << " k=" << instance.k << " g=" << instance.g
     << " h=" << instance.h;
  return os.str();
}

SubspaceState uniform_state(const ProblemInstance& instance) {
  const double N = static_cast<double>(instance.N);
  const double k = static_cast<double>(instance.k);
  return SubspaceState(std::sqrt(k / N), std::sqrt((N - k) / N));
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::SharpPeak: return "SharpPeak";
    case Regime::WidePeak: return "WidePeak";
    case Regime::Plateau: return "Plateau";
  }
  return "?";
}

}  // namespace nlwalk
