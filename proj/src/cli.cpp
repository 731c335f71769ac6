#include "nlwalk/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlwalk/analytics.hpp"
#include "nlwalk/dynamics2d.hpp"
#include "nlwalk/experiments.hpp"
#include "nlwalk/fullspace.hpp"
#include "nlwalk/verify.hpp"

namespace nlwalk {

namespace fs = std::filesystem;

namespace {

struct InstanceFlags {
  std::int64_t n = 0;
  std::int64_t k = 0;
  double g = 0.0;
  double h = 0.0;
  double norm_tol = 1e-9;

  void attach(CLI::App* app) {
    app->add_option("--n", n, "vertex count N")->required();
    app->add_option("--k", k, "marked-vertex count")->required();
    app->add_option("--g", g, "nonlinear coefficient")->required();
    app->add_option("--h", h, "quintic-to-cubic ratio")->required();
    app->add_option("--norm-tol", norm_tol, "norm tolerance")->capture_default_str();
  }
  ProblemInstance instance() const { return validate({n, k, g, h, norm_tol}); }
};

struct IntegratorFlags {
  IntegratorConfig cfg;

  void attach(CLI::App* app) {
    app->add_option("--t-max", cfg.t_max, "integration horizon")->capture_default_str();
    app->add_option("--rel-tol", cfg.rel_tol, "relative tolerance")->capture_default_str();
    app->add_option("--abs-tol", cfg.abs_tol, "absolute tolerance")->capture_default_str();
    app->add_option("--max-step", cfg.max_step, "maximum step")->capture_default_str();
    app->add_option("--sample-dt", cfg.sample_dt, "sampling interval")->capture_default_str();
  }
};

void kv(std::ostream& out, const std::string& key, const std::string& value) {
  out << key << '=' << value << '\n';
}
void kv(std::ostream& out, const std::string& key, double value) {
  kv(out, key, format_double(value));
}
void kv(std::ostream& out, const std::string& key, const std::optional<double>& value) {
  kv(out, key, value ? format_double(*value) : std::string("none"));
}

void print_instance(std::ostream& out, const ProblemInstance& inst) {
  kv(out, "N", std::to_string(inst.N));
  kv(out, "k", std::to_string(inst.k));
  kv(out, "g", inst.g);
  kv(out, "h", inst.h);
}

void print_config(std::ostream& out, const IntegratorConfig& cfg, double norm_tol) {
  kv(out, "rel_tol", cfg.rel_tol);
  kv(out, "abs_tol", cfg.abs_tol);
  kv(out, "max_step", cfg.max_step);
  kv(out, "t_max", cfg.t_max);
  kv(out, "sample_dt", cfg.sample_dt);
  kv(out, "norm_tol", norm_tol);
}

void print_classification(std::ostream& out, const Classification& c) {
  kv(out, "regime", to_string(c.regime.kind));
  kv(out, "boundary_note", c.regime.boundary_note ? "true" : "false");
  const char* status = c.status == ScalingStatus::Assigned    ? "assigned"
                       : c.status == ScalingStatus::Ambiguous ? "ambiguous"
                                                              : "not-applicable";
  kv(out, "scaling_status", status);
  kv(out, "scaling_class", c.scaling ? to_string(*c.scaling) : "none");
  kv(out, "scaling_condition", c.scaling ? condition(*c.scaling) : "none");
  kv(out, "runtime_law", c.scaling ? runtime_law(*c.scaling) : "none");
  kv(out, "extrapolated_from_h_equals_k", c.extrapolated_from_h_equals_k ? "true" : "false");
}

fs::path sibling(const fs::path& csv, const std::string& suffix) {
  fs::path p = csv;
  p.replace_filename(csv.stem().string() + suffix + ".csv");
  return p;
}

void write_events_csv(const Trajectory& traj, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot open " + path.string() + " for writing");
  out << "kind,t,x,target\n";
  for (const auto& e : traj.events)
    out << to_string(e.kind) << ',' << format_double(e.t) << ',' << format_double(e.x) << ','
        << format_double(e.target) << '\n';
  if (!out) throw IOError("write to " + path.string() + " failed");
}

void write_full_csv(const FullTrajectory& traj, const ProblemInstance& inst,
                    const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot open " + path.string() + " for writing");
  out << "t,x,alpha_re,alpha_im,beta_re,beta_im,gamma,norm_err,marked_spread,unmarked_spread\n";
  for (const auto& s : traj.samples)
    out << format_double(s.t) << ',' << format_double(s.x) << ','
        << format_double(s.alpha.real()) << ',' << format_double(s.alpha.imag()) << ','
        << format_double(s.beta.real()) << ',' << format_double(s.beta.imag()) << ','
        << format_double(strengths<double>(s.x, inst).gamma_c) << ','
        << format_double(s.norm_err) << ',' << format_double(s.marked_spread) << ','
        << format_double(s.unmarked_spread) << '\n';
  if (!out) throw IOError("write to " + path.string() + " failed");
}

int cmd_simulate(const InstanceFlags& flags, const IntegratorFlags& integ, const fs::path& csv,
                 bool full_space, std::ostream& out) {
  const auto inst = flags.instance();
  auto cfg = integ.cfg;
  cfg.sample_dt = std::min(cfg.sample_dt, cfg.t_max);
  if (csv.has_parent_path()) fs::create_directories(csv.parent_path());

  const auto traj = integrate(inst, cfg);
  const auto label = regime(inst);
  kv(out, "instance", describe(inst));
  kv(out, "regime", to_string(label.kind));
  kv(out, "boundary_note", label.boundary_note ? "true" : "false");
  if (full_space) {
    const auto full = integrate_full(inst, cfg);
    write_full_csv(full, inst, csv);
    const auto reduced_csv = sibling(csv, "_subspace");
    write_trajectory_csv(traj, reduced_csv);
    double dev = 0.0;
    for (std::size_t i = 0; i < std::min(full.samples.size(), traj.samples.size()); ++i)
      dev = std::max(dev, std::abs(full.samples[i].x - traj.samples[i].x));
    kv(out, "full_space_max_deviation", dev);
    kv(out, "full_space_max_spread", full.max_spread());
    kv(out, "full_space_max_norm_err", full.max_norm_err());
    kv(out, "subspace_csv", reduced_csv.string());
  } else {
    write_trajectory_csv(traj, csv);
  }
  const auto events_csv = sibling(csv, "_events");
  write_events_csv(traj, events_csv);

  const auto peak = traj.find(EventKind::FirstPeak);
  const auto plateau = traj.find(EventKind::PlateauDetected);
  if (peak)
    out << "event=FirstPeak t=" << format_double(peak->t) << " x=" << format_double(peak->x)
        << '\n';
  if (plateau)
    out << "event=PlateauDetected t=" << format_double(plateau->t)
        << " x=" << format_double(plateau->x) << '\n';
  if (const auto half = traj.find(EventKind::HalfPlateau))
    out << "event=HalfPlateau t=" << format_double(half->t) << " x=" << format_double(half->x)
        << '\n';
  if (!peak && !plateau) kv(out, "event", "none before t_max");
  kv(out, "max_x", traj.max_x());
  kv(out, "max_norm_err", traj.max_norm_err());
  kv(out, "samples", std::to_string(traj.samples.size()));
  kv(out, "csv", csv.string());
  kv(out, "events_csv", events_csv.string());
  return kExitOk;
}

int cmd_analytic(const InstanceFlags& flags, const std::optional<double>& x, double epsilon,
                 double dominance, std::ostream& out) {
  const auto inst = flags.instance();
  const auto s = summarize(inst, epsilon, dominance);
  print_instance(out, inst);
  print_config(out, IntegratorConfig{}, inst.norm_tol);
  kv(out, "epsilon", epsilon);
  kv(out, "tau", 1.0);
  kv(out, "dominance", dominance);
  kv(out, "h_c", s.h_c);
  print_classification(out, s.classification);
  if (s.roots) {
    kv(out, "x_plus_exact", s.roots->x_plus);
    kv(out, "x_minus_exact", s.roots->x_minus);
    kv(out, "x_plus_large_n", s.roots->x_plus_large_n);
    kv(out, "x_minus_large_n", s.roots->x_minus_large_n);
  }
  kv(out, "x_plus", s.plateau_height);
  kv(out, "width", s.width_infinite ? std::optional<double>(INFINITY) : s.width);
  kv(out, "t_star", s.t_star);
  kv(out, "t_half", s.t_half);
  if (x) {
    kv(out, "x", *x);
    kv(out, "t_x", analytic_time(inst, *x));
  }
  return kExitOk;
}

int cmd_classify(const InstanceFlags& flags, double dominance, std::ostream& out) {
  const auto inst = flags.instance();
  print_instance(out, inst);
  kv(out, "dominance", dominance);
  kv(out, "h_c", critical_h(inst.k, inst.g));
  print_classification(out, classify(inst, dominance));
  return kExitOk;
}

int cmd_sweep(const fs::path& spec_file, const fs::path& stem, int jobs, std::ostream& out,
              std::ostream& err) {
  std::ifstream in(spec_file);
  if (!in) throw IOError("cannot read sweep spec " + spec_file.string());
  std::stringstream text;
  text << in.rdbuf();
  const auto spec = parse_sweep_spec(text.str());
  const auto result = run_sweep(spec, jobs);
  const auto files = write_sweep(result, stem);
  kv(out, "points", std::to_string(result.points.size()));
  kv(out, "failures", std::to_string(result.failures().size()));
  for (const auto& f : files) kv(out, "file", f.string());
  int code = kExitOk;
  for (const auto* p : result.failures()) {
    err << "point " << p->index << " (" << to_string(spec.axis) << "=" << p->value
        << "): " << p->error << '\n';
    const int c = *p->error_family == ErrorFamily::Numeric ? kExitNumeric : kExitDomain;
    if (code == kExitOk) code = c;
  }
  return code;
}

int cmd_figures(const std::vector<std::string>& ids, const fs::path& out_dir, int jobs,
                std::ostream& out) {
  std::vector<std::string> list = ids;
  if (list.size() == 1 && list[0] == "all") list = figure_ids();
  for (const auto& id : list) {
    const auto& known = figure_ids();
    if (std::find(known.begin(), known.end(), id) == known.end())
      throw DomainError("unknown figure id '" + id + "'");
  }
  for (const auto& id : list) {
    const auto files = figure_dataset(id, out_dir, jobs);
    out << "figure=" << id << " manifest=" << files.manifest.string()
        << " files=" << files.files.size() << '\n';
  }
  return kExitOk;
}

void print_fit(std::ostream& out, const std::string& name, const FitResult& f) {
  out << name << ": coefficient=" << format_double(f.coefficient)
      << " exponent=" << format_double(f.exponent) << " r_squared=" << format_double(f.r_squared)
      << '\n';
}

int cmd_resources(const std::string& family, double epsilon, double tau, const fs::path& csv,
                  std::ostream& out) {
  const auto est = resources(resource_family(family), epsilon, tau);
  kv(out, "family", family);
  kv(out, "epsilon", epsilon);
  kv(out, "tau", tau);
  print_fit(out, "t_run", est.t_run);
  print_fit(out, "n_bec_lower", est.n_bec_lower);
  print_fit(out, "n_clock", est.n_clock);
  print_fit(out, "space_time", est.space_time);
  if (!csv.empty()) {
    if (csv.has_parent_path()) fs::create_directories(csv.parent_path());
    std::ofstream f(csv, std::ios::binary);
    if (!f) throw IOError("cannot open " + csv.string() + " for writing");
    f << "N,k,g,h,t_run,width,n_bec_lower,n_clock,space_time\n";
    for (const auto& r : est.rows)
      f << r.instance.N << ',' << r.instance.k << ',' << format_double(r.instance.g) << ','
        << format_double(r.instance.h) << ',' << format_double(r.t_run) << ','
        << format_double(r.width) << ',' << format_double(r.n_bec_lower) << ','
        << format_double(r.n_clock) << ',' << format_double(r.space_time) << '\n';
    if (!f) throw IOError("write to " + csv.string() + " failed");
    kv(out, "csv", csv.string());
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, int jobs, bool verbose, std::ostream& out) {
  bool pass = true;
  for (const auto& r : run_suites(suite, jobs)) {
    out << "suite=" << r.suite << " status=" << (r.pass ? "pass" : "FAIL")
        << " max_residual=" << format_double(r.max_residual)
        << " tolerance=" << format_double(r.tolerance) << " cases=" << r.cases.size() << '\n';
    for (const auto& c : r.cases)
      if (verbose || !c.pass)
        out << "  " << (c.pass ? "pass" : "FAIL") << ' ' << c.label
            << " residual=" << format_double(c.residual) << '\n';
    pass = pass && r.pass;
  }
  return pass ? kExitOk : kExitNumeric;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlinear quantum-walk search on the complete graph", "nlwalk"};
  // -h would collide with the --h parameter flag.
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  int jobs = default_jobs();
  app.add_option("--jobs", jobs, "worker threads (default: NLWALK_JOBS or 1)")
      ->check(CLI::PositiveNumber);

  auto* sim = app.add_subcommand("simulate", "integrate the subspace dynamics");
  InstanceFlags sim_inst;
  IntegratorFlags sim_cfg;
  std::string sim_out = "trajectory.csv";
  bool full_space = false;
  sim_inst.attach(sim);
  sim_cfg.attach(sim);
  sim->add_option("--out", sim_out, "trajectory CSV path")->capture_default_str();
  sim->add_flag("--full-space", full_space, "integrate the N-dimensional equation (N <= 4096)");

  auto* ana = app.add_subcommand("analytic", "closed-form quantities");
  InstanceFlags ana_inst;
  std::optional<double> ana_x;
  double ana_eps = kDefaultEpsilon, ana_dom = kDefaultDominance;
  ana_inst.attach(ana);
  ana->add_option("--x", ana_x, "also report the time to reach this probability");
  ana->add_option("--epsilon", ana_eps, "peak-width depth")->capture_default_str();
  ana->add_option("--dominance", ana_dom, "ratio meaning a >> b")->capture_default_str();

  auto* cls = app.add_subcommand("classify", "regime and asymptotic runtime class");
  InstanceFlags cls_inst;
  double cls_dom = kDefaultDominance;
  cls_inst.attach(cls);
  cls->add_option("--dominance", cls_dom, "ratio meaning a >> b")->capture_default_str();

  auto* swp = app.add_subcommand("sweep", "parameter sweep from a key=value spec file");
  std::string spec_file, sweep_out = "sweep";
  swp->add_option("--spec-file", spec_file, "sweep spec")->required();
  swp->add_option("--out", sweep_out, "output stem")->capture_default_str();

  auto* fig = app.add_subcommand("figures", "figure datasets");
  std::vector<std::string> fig_ids;
  std::string fig_dir = "figures";
  fig->add_option("--id", fig_ids, "figure id, repeatable, or 'all'")->required();
  fig->add_option("--out-dir", fig_dir, "output directory")->capture_default_str();

  auto* res = app.add_subcommand("resources", "resource classes over an N-family");
  std::string family;
  double res_eps = kDefaultEpsilon, tau = 1.0;
  std::string res_csv;
  res->add_option("--family", family, "family name")
      ->required()
      ->check(CLI::IsMember(resource_family_names()));
  res->add_option("--epsilon", res_eps, "peak-width depth")->capture_default_str();
  res->add_option("--tau", tau, "measurement-time constant")->capture_default_str();
  res->add_option("--out", res_csv, "per-instance CSV");

  auto* ver = app.add_subcommand("verify", "oracle suites");
  std::string suite = "all";
  bool verbose = false;
  ver->add_option("--suite", suite, "oracle, analytic, fixed-point or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"oracle", "analytic", "fixed-point", "all"}));
  ver->add_flag("--verbose", verbose, "print every case");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  try {
    if (*sim) return cmd_simulate(sim_inst, sim_cfg, sim_out, full_space, out);
    if (*ana) return cmd_analytic(ana_inst, ana_x, ana_eps, ana_dom, out);
    if (*cls) return cmd_classify(cls_inst, cls_dom, out);
    if (*swp) return cmd_sweep(spec_file, sweep_out, jobs, out, err);
    if (*fig) return cmd_figures(fig_ids, fig_dir, jobs, out);
    if (*res) return cmd_resources(family, res_eps, tau, res_csv, out);
    if (*ver) return cmd_verify(suite, jobs, verbose, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.family() == ErrorFamily::Numeric ? kExitNumeric : kExitDomain;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitDomain;
}

}  // namespace nlwalk
