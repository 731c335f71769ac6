#ifndef NLWALK_EXPERIMENTS_HPP
#define NLWALK_EXPERIMENTS_HPP

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlwalk/analytics.hpp"
#include "nlwalk/dynamics2d.hpp"
#include "nlwalk/fit.hpp"

namespace nlwalk {

/// "%.11e": scientific, 12 significant digits, '.' separator. Non-finite
/// values print as nan / inf / -inf.
std::string format_double(double value);

void write_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path);

// ---------------------------------------------------------------- sweeps

enum class SweepOutput { Trajectory, TStar, THalf, Width, XPlus, Classification };

const char* to_string(SweepOutput output);
SweepOutput parse_sweep_output(const std::string& name);

struct SweepSpec {
  ProblemInstance base;
  Axis axis = Axis::N;
  std::vector<double> values;
  std::vector<SweepOutput> outputs;
  double epsilon = kDefaultEpsilon;
  IntegratorConfig config;
};

/// Parses a flat key=value file: N, k, g, h, axis, values, outputs, epsilon,
/// t_max. values is a comma list or start:stop:step (inclusive). '#' starts a
/// comment. Throws DomainError naming the offending line.
SweepSpec parse_sweep_spec(const std::string& text);

struct SweepPoint {
  std::size_t index = 0;
  double value = 0.0;
  ProblemInstance instance;
  std::optional<double> t_star;
  std::optional<double> t_half;
  std::optional<double> width;
  std::optional<double> x_plus;
  std::string classification;
  std::optional<Trajectory> trajectory;
  // Empty on success.
  std::string error;
  std::optional<ErrorFamily> error_family;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepPoint> points;

  std::vector<const SweepPoint*> failures() const;
};

/// Points are evaluated on a pool of `workers` threads; results are indexed by
/// input position, so the output does not depend on the worker count. A
/// failing point records its error and the others still run.
SweepResult run_sweep(const SweepSpec& spec, int workers = 1);

/// Writes <stem>.csv with one row per point and, when trajectories were
/// requested, <stem>_<index>.csv per point.
std::vector<std::filesystem::path> write_sweep(const SweepResult& result,
                                               const std::filesystem::path& stem);

/// NLWALK_JOBS if set to a positive integer, else 1.
int default_jobs();

/// Runs fn(i) for i in [0, n) on `workers` threads. The first exception (by
/// index) is rethrown after all tasks finish.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------- figures

const std::vector<std::string>& figure_ids();

struct FigureFiles {
  std::string id;
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> files;
};

/// Writes every curve of a figure as CSV plus <id>_manifest.json into
/// out_dir. Throws DomainError for an unknown id and IOError when the
/// directory cannot be written.
FigureFiles figure_dataset(const std::string& id, const std::filesystem::path& out_dir,
                           int workers = 1);

/// One scaling series of a fig6 panel, on its exact parameter grid.
struct ScalingSeries {
  std::string panel;
  std::string name;
  Axis axis = Axis::N;
  std::vector<ProblemInstance> instances;
  // Exponent the asymptotic class predicts for this axis.
  double expected_exponent = 0.0;
};

std::vector<ScalingSeries> scaling_panel(const std::string& panel);

struct SeriesFit {
  ScalingSeries series;
  std::vector<double> t_star;
  FitResult fit;
};

SeriesFit fit_series(const ScalingSeries& series);

/// N grid of the runtime-vs-N figure: 10^3 .. 10^6, ten points per decade.
std::vector<std::int64_t> runtime_n_grid();

// ---------------------------------------------------------------- numerics

/// Full width of the first peak at height 1 - epsilon from the integrator:
/// twice the interval between the upward crossing and the peak, the orbit
/// being time-symmetric about its maximum.
double numeric_peak_width(const ProblemInstance& instance, double epsilon = kDefaultEpsilon,
                          IntegratorConfig config = {});

/// Plateau reached by the integrator: x at PlateauDetected, or x at t_max
/// when the plateau criteria never hold.
double simulated_plateau(const ProblemInstance& instance, IntegratorConfig config = {});

// ---------------------------------------------------------------- resources

struct ResourceRow {
  ProblemInstance instance;
  double t_run = 0.0;
  double width = 0.0;  // inf for plateaus
  double n_bec_lower = 0.0;
  double n_clock = 0.0;
  double space_time = 0.0;
};

/// Each class is a power law in N fitted over the family.
struct ResourceEstimate {
  double tau = 1.0;
  double epsilon = kDefaultEpsilon;
  FitResult t_run;
  FitResult n_bec_lower;
  FitResult n_clock;
  FitResult space_time;
  std::vector<ResourceRow> rows;
};

/// t_run is t_star for peaks and t_half for plateaus; n_bec_lower = N / t_run^2;
/// n_clock = max(1 / (width sqrt(tau)), 1); space_time = n_clock * t_run.
ResourceEstimate resources(const std::vector<ProblemInstance>& family,
                           double epsilon = kDefaultEpsilon, double tau = 1.0);

/// Named N-families over N = 1e4, 3e4, 1e5, 3e5, 1e6:
///   sqrtN-sharp   k=3, h=1, g=sqrt(N)
///   sqrtN-wide    k=3, h=3, g=sqrt(N)
///   linear-wide   k=3, h=3, g=N-1
///   linear-plateau k=3, h=4, g=N-1
std::vector<ProblemInstance> resource_family(const std::string& name);
const std::vector<std::string>& resource_family_names();

}  // namespace nlwalk

#endif  // NLWALK_EXPERIMENTS_HPP
