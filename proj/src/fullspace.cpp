#include "nlwalk/fullspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlwalk/dynamics2d.hpp"

namespace nlwalk {

namespace {

void check_size(const ProblemInstance& inst, std::int64_t cap) {
  if (inst.N > cap)
    throw DomainError("full-space oracle limited to N <= " + std::to_string(cap) + ", got " +
                      std::to_string(inst.N));
}

std::vector<char> marked_mask(const FullState& state) {
  std::vector<char> mask(static_cast<std::size_t>(state.amplitudes.size()), 0);
  for (auto i : state.marked) mask[static_cast<std::size_t>(i)] = 1;
  return mask;
}

double spread(const Eigen::VectorXcd& psi, const std::vector<char>& mask, char which) {
  // Diagonal of the bounding box: an upper bound on the pairwise diameter.
  double re_lo = INFINITY, re_hi = -INFINITY, im_lo = INFINITY, im_hi = -INFINITY;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (mask[static_cast<std::size_t>(i)] != which) continue;
    re_lo = std::min(re_lo, psi(i).real());
    re_hi = std::max(re_hi, psi(i).real());
    im_lo = std::min(im_lo, psi(i).imag());
    im_hi = std::max(im_hi, psi(i).imag());
  }
  if (re_hi < re_lo) return 0.0;
  return std::hypot(re_hi - re_lo, im_hi - im_lo);
}

// Same rotating frame as the subspace path: the unmarked diagonal term is
// removed and integrated as a global phase in the last component.
Eigen::VectorXcd frame_rhs(const Eigen::VectorXcd& z, const ProblemInstance& inst,
                           const FullState& shape) {
  const Eigen::Index n = z.size() - 1;
  FullState view{z.head(n), shape.marked};
  const double x = marked_probability(view);
  const auto s = strengths<double>(x, inst);
  const double shift =
      s.gamma_c * static_cast<double>(inst.N - inst.k) + inst.g * s.f_beta;
  Eigen::VectorXcd dz(z.size());
  dz.head(n) = full_rhs(view, inst) - std::complex<double>(0.0, shift) * view.amplitudes;
  dz(n) = shift;
  return dz;
}

FullSample make_sample(double t, const Eigen::VectorXcd& psi, const FullState& shape,
                       const std::vector<char>& mask) {
  FullSample s;
  s.t = t;
  double x = 0.0;
  std::complex<double> marked_sum = 0.0;
  for (auto i : shape.marked) {
    x += std::norm(psi(i));
    marked_sum += psi(i);
  }
  s.x = x;
  const auto n = static_cast<double>(psi.size());
  const auto k = static_cast<double>(shape.marked.size());
  s.alpha = marked_sum / std::sqrt(k);
  s.beta = (psi.sum() - marked_sum) / std::sqrt(n - k);
  s.norm_err = std::abs(psi.squaredNorm() - 1.0);
  s.marked_spread = spread(psi, mask, 1);
  s.unmarked_spread = spread(psi, mask, 0);
  return s;
}

}  // namespace

FullState uniform_full_state(const ProblemInstance& instance) {
  const auto inst = validate(instance);
  std::vector<std::int64_t> marked(static_cast<std::size_t>(inst.k));
  for (std::int64_t i = 0; i < inst.k; ++i) marked[static_cast<std::size_t>(i)] = i;
  return uniform_full_state(inst, std::move(marked));
}

FullState uniform_full_state(const ProblemInstance& instance, std::vector<std::int64_t> marked) {
  const auto inst = validate(instance);
  check_size(inst, kFullSpaceMaxN);
  if (static_cast<std::int64_t>(marked.size()) != inst.k)
    throw DomainError("marked set must contain exactly k vertices");
  std::vector<std::int64_t> sorted = marked;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("marked vertices must be distinct");
  if (sorted.front() < 0 || sorted.back() >= inst.N)
    throw DomainError("marked vertex index out of range");
  FullState state;
  state.amplitudes = Eigen::VectorXcd::Constant(
      inst.N, std::complex<double>(1.0 / std::sqrt(static_cast<double>(inst.N)), 0.0));
  state.marked = std::move(marked);
  return state;
}

double marked_probability(const FullState& state) {
  double x = 0.0;
  for (auto i : state.marked) x += std::norm(state.amplitudes(i));
  return x;
}

Eigen::VectorXcd full_rhs(const FullState& state, const ProblemInstance& instance) {
  const ProblemInstance& inst = instance;
  check_size(inst, kFullSpaceMaxN);
  const auto& psi = state.amplitudes;
  const double gamma = strengths<double>(marked_probability(state), inst).gamma_c;
  // gamma N |s><s| psi = gamma * sum(psi) on every vertex.
  const std::complex<double> hop = gamma * psi.sum();
  Eigen::VectorXcd out(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    out(i) = hop + inst.g * nonlinearity(std::norm(psi(i)), inst.h) * psi(i);
  for (auto i : state.marked) out(i) += psi(i);
  return std::complex<double>(0.0, 1.0) * out;
}

double FullTrajectory::max_spread() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max({m, s.marked_spread, s.unmarked_spread});
  return m;
}

double FullTrajectory::max_norm_err() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.norm_err);
  return m;
}

FullTrajectory integrate_full(const ProblemInstance& instance, const IntegratorConfig& config,
                              const FullState* initial) {
  const auto inst = validate(instance);
  check_size(inst, kFullSpaceMaxN);
  config.check();
  const FullState start = initial ? *initial : uniform_full_state(inst);
  if (start.amplitudes.size() != inst.N)
    throw DomainError("initial state length differs from N");
  const auto mask = marked_mask(start);

  Eigen::VectorXcd z(inst.N + 1);
  z.head(inst.N) = start.amplitudes;
  z(inst.N) = 0.0;

  auto f = [&](double, const Eigen::VectorXcd& v) { return frame_rhs(v, inst, start); };
  Dop853 solver(f, config, 0.0, z);

  auto lab = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return std::polar(1.0, v(inst.N).real()) * v.head(inst.N);
  };

  FullTrajectory traj;
  traj.samples.push_back(make_sample(0.0, start.amplitudes, start, mask));
  std::int64_t next_sample = 1;
  while (solver.time() < config.t_max) {
    const auto& seg = solver.step(config.t_max);
    for (;;) {
      const double ts = static_cast<double>(next_sample) * config.sample_dt;
      if (ts > seg.t1() || ts > config.t_max) break;
      const Eigen::VectorXcd psi = ts == seg.t1() ? lab(solver.state()) : lab(seg(ts));
      traj.samples.push_back(make_sample(ts, psi, start, mask));
      if (traj.samples.back().norm_err > inst.norm_tol)
        throw NumericalError("full-space norm drift exceeds tolerance at t=" +
                             std::to_string(ts) + " for " + describe(inst));
      ++next_sample;
    }
  }
  traj.final_state = FullState{lab(solver.state()), start.marked};
  return traj;
}

double compare_to_subspace(const ProblemInstance& instance, const IntegratorConfig& config) {
  const auto inst = validate(instance);
  check_size(inst, kCompareMaxN);
  const auto full = integrate_full(inst, config);
  const auto reduced = integrate(inst, config);
  const std::size_t n = std::min(full.samples.size(), reduced.samples.size());
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    dev = std::max(dev, std::abs(full.samples[i].x - reduced.samples[i].x));
  return dev;
}

}  // namespace nlwalk
