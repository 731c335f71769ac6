#ifndef NLWALK_FULLSPACE_HPP
#define NLWALK_FULLSPACE_HPP

#include <vector>

#include <Eigen/Dense>

#include "nlwalk/core.hpp"
#include "nlwalk/dop853.hpp"

namespace nlwalk {

inline constexpr std::int64_t kFullSpaceMaxN = 4096;
inline constexpr std::int64_t kCompareMaxN = 1024;

/// One amplitude per vertex of the complete graph plus the marked set.
struct FullState {
  Eigen::VectorXcd amplitudes;
  std::vector<std::int64_t> marked;
};

/// Marks the first k vertices and starts from the uniform superposition.
FullState uniform_full_state(const ProblemInstance& instance);
/// Same with an explicit marked set; throws DomainError unless it holds k
/// distinct indices in [0, N).
FullState uniform_full_state(const ProblemInstance& instance, std::vector<std::int64_t> marked);

double marked_probability(const FullState& state);

/// i [gamma N |s><s| + sum_{i in M} |i><i| + g f(|psi_i|^2)] psi, with gamma the
/// critical rate at x = sum over marked |psi_i|^2. O(N).
Eigen::VectorXcd full_rhs(const FullState& state, const ProblemInstance& instance);

struct FullSample {
  double t = 0.0;
  double x = 0.0;
  double norm_err = 0.0;
  // Projections onto the normalized marked and unmarked superpositions.
  std::complex<double> alpha;
  std::complex<double> beta;
  // Largest |psi_i - psi_j| within the marked set and within its complement.
  double marked_spread = 0.0;
  double unmarked_spread = 0.0;
};

struct FullTrajectory {
  std::vector<FullSample> samples;
  FullState final_state;

  double max_spread() const;
  double max_norm_err() const;
};

/// Integrates to config.t_max with the same engine and tolerances as the
/// subspace path, sampling on j * sample_dt. Throws NumericalError on norm
/// drift beyond instance.norm_tol.
FullTrajectory integrate_full(const ProblemInstance& instance, const IntegratorConfig& config = {},
                              const FullState* initial = nullptr);

/// max over samples of |x_full(t) - x_2d(t)|.
double compare_to_subspace(const ProblemInstance& instance, const IntegratorConfig& config = {});

}  // namespace nlwalk

#endif  // NLWALK_FULLSPACE_HPP
