#include "nlwalk/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace nlwalk {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot open " + path.string() + " for writing");
  return out;
}

void close_output(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IOError("write to " + path.string() + " failed");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw IOError("cannot create output directory " + dir.string());
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& context) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw DomainError(context + ": '" + t + "' is not a number");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) parts.push_back(trim(item));
  return parts;
}

// Inclusive arithmetic range; the count is rounded so 0.1-type steps land on
// the endpoint.
std::vector<double> range(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) throw DomainError("range requires step > 0 and stop >= start");
  const auto n = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) v.push_back(start + static_cast<double>(i) * step);
  return v;
}

std::string classification_label(const Classification& c) {
  std::string s = to_string(c.regime.kind);
  if (c.status == ScalingStatus::Assigned) s += std::string(":") + to_string(*c.scaling);
  if (c.status == ScalingStatus::Ambiguous) s += ":ambiguous";
  if (c.extrapolated_from_h_equals_k) s += ":extrapolated";
  if (c.regime.boundary_note) s += ":boundary";
  return s;
}

std::string opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("nan");
}

json instance_json(const ProblemInstance& inst) {
  return json{{"N", inst.N}, {"k", inst.k}, {"g", inst.g}, {"h", inst.h}};
}

// Short decimal for file names and labels: 3.0091 rather than 3.00910000000e+00.
std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

constexpr const char* kStyles[] = {"solid-black", "dashed-red", "dotted-green"};

struct CurveSpec {
  std::string file;
  std::string label;
  std::string style;
  ProblemInstance instance;
};

FigureFiles write_trajectory_figure(const std::string& id, const std::string& caption,
                                    const std::vector<CurveSpec>& curves, double t_max,
                                    const fs::path& out_dir, int workers) {
  ensure_dir(out_dir);
  IntegratorConfig cfg;
  cfg.t_max = t_max;
  std::vector<Trajectory> trajs(curves.size());
  parallel_for(curves.size(), workers,
               [&](std::size_t i) { trajs[i] = integrate(curves[i].instance, cfg); });

  FigureFiles files;
  files.id = id;
  json manifest;
  manifest["figure"] = id;
  manifest["caption"] = caption;
  manifest["axes"] = {{"x", "t"}, {"y", "success probability"}};
  manifest["t_max"] = t_max;
  json list = json::array();
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const fs::path path = out_dir / curves[i].file;
    write_trajectory_csv(trajs[i], path);
    files.files.push_back(path);
    json events = json::array();
    for (const auto& e : trajs[i].events)
      events.push_back({{"kind", to_string(e.kind)}, {"t", e.t}, {"x", e.x}});
    list.push_back({{"file", curves[i].file},
                    {"label", curves[i].label},
                    {"style", curves[i].style},
                    {"kind", "trajectory"},
                    {"x_column", "t"},
                    {"y_column", "x"},
                    {"parameters", instance_json(curves[i].instance)},
                    {"regime", to_string(regime(curves[i].instance).kind)},
                    {"events", events}});
  }
  manifest["curves"] = list;
  files.manifest = out_dir / (id + "_manifest.json");
  auto out = open_output(files.manifest);
  out << manifest.dump(2) << '\n';
  close_output(out, files.manifest);
  return files;
}

const std::vector<double> kFig3H = {1, 2, 2.9, 2.99, 3, 3.008, 3.0091, 3.08, 3.091, 3.3, 4, 5};

FigureFiles fig2_or_3(const std::string& id, const fs::path& out_dir, int workers) {
  std::int64_t k = 0;
  double h = 0.0;
  std::string caption;
  if (id == "fig2a" || id == "fig2b") {
    k = id == "fig2a" ? 1 : 2;
    h = 1.0;
    caption = "success probability vs time, h=1, k=" + std::to_string(k) + ", g=N-1";
  } else {
    k = 3;
    h = kFig3H[static_cast<std::size_t>(id.back() - 'a')];
    caption = "success probability vs time, k=3, g=N-1, h=" + short_number(h);
  }
  std::vector<CurveSpec> curves;
  const std::int64_t ns[] = {100, 1000};
  for (int i = 0; i < 2; ++i) {
    const std::int64_t n = ns[i];
    curves.push_back({id + "_N" + std::to_string(n) + ".csv", "N = " + std::to_string(n),
                      kStyles[i], ProblemInstance{n, k, static_cast<double>(n - 1), h}});
  }
  return write_trajectory_figure(id, caption, curves, 10.0, out_dir, workers);
}

FigureFiles fig4(const fs::path& out_dir, int workers) {
  std::vector<CurveSpec> curves;
  const double gs[] = {10, 20, 100};
  for (int i = 0; i < 3; ++i)
    curves.push_back({"fig4_g" + short_number(gs[i]) + ".csv", "g = " + short_number(gs[i]),
                      kStyles[i], ProblemInstance{1000, 2, gs[i], 4.0}});
  return write_trajectory_figure("fig4", "success probability vs time, N=1000, k=2, h=4",
                                 curves, 60.0, out_dir, workers);
}

// Integrator cross-check of the analytic runtime is limited to this N.
constexpr std::int64_t kFig5NumericMaxN = 10000;

FigureFiles fig5(const fs::path& out_dir, int workers) {
  ensure_dir(out_dir);
  const auto grid = runtime_n_grid();
  std::vector<double> analytic(grid.size()), numeric(grid.size(), std::nan(""));
  parallel_for(grid.size(), workers, [&](std::size_t i) {
    const ProblemInstance inst{grid[i], 3, static_cast<double>(grid[i] - 1), 2.99};
    analytic[i] = runtime_peak(inst);
    if (grid[i] <= kFig5NumericMaxN) {
      IntegratorConfig cfg;
      cfg.t_max = 2.0 * analytic[i] + 1.0;
      EventRequest req;
      req.require_terminal = true;
      req.stop_when_resolved = true;
      const auto peak = integrate(inst, cfg, req).find(EventKind::FirstPeak);
      numeric[i] = peak ? peak->t : std::nan("");
    }
  });

  FigureFiles files;
  files.id = "fig5";
  const fs::path path = out_dir / "fig5_runtime.csv";
  auto out = open_output(path);
  out << "N,t_star,t_star_numeric\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out << grid[i] << ',' << format_double(analytic[i]) << ',' << format_double(numeric[i])
        << '\n';
  close_output(out, path);
  files.files.push_back(path);

  json manifest;
  manifest["figure"] = "fig5";
  manifest["caption"] = "runtime vs N, k=3, h=2.99, g=N-1";
  manifest["axes"] = {{"x", "N"}, {"y", "runtime"}};
  manifest["reference"] = {{"label", "pi/2"}, {"value", std::numbers::pi / 2}};
  manifest["curves"] = json::array(
      {{{"file", "fig5_runtime.csv"},
        {"label", "analytic"},
        {"style", "solid-black"},
        {"kind", "series"},
        {"x_column", "N"},
        {"y_column", "t_star"},
        {"parameters", {{"k", 3}, {"g", "N-1"}, {"h", 2.99}}}},
       {{"file", "fig5_runtime.csv"},
        {"label", "integrator"},
        {"style", "dashed-red"},
        {"kind", "series"},
        {"x_column", "N"},
        {"y_column", "t_star_numeric"},
        {"parameters", {{"k", 3}, {"g", "N-1"}, {"h", 2.99}}}}});
  files.manifest = out_dir / "fig5_manifest.json";
  auto mout = open_output(files.manifest);
  mout << manifest.dump(2) << '\n';
  close_output(mout, files.manifest);
  return files;
}

FigureFiles fig6(const std::string& id, const fs::path& out_dir, int workers) {
  ensure_dir(out_dir);
  const std::string panel = id.substr(4);
  const auto series = scaling_panel(panel);
  std::vector<SeriesFit> fits(series.size());
  parallel_for(series.size(), workers, [&](std::size_t i) { fits[i] = fit_series(series[i]); });

  FigureFiles files;
  files.id = id;
  json curves = json::array();
  for (const auto& sf : fits) {
    const std::string name = id + "_" + sf.series.name + ".csv";
    const fs::path path = out_dir / name;
    auto out = open_output(path);
    out << "value,N,k,g,h,t_star\n";
    for (std::size_t j = 0; j < sf.series.instances.size(); ++j) {
      const auto& inst = sf.series.instances[j];
      out << format_double(axis_value(inst, sf.series.axis)) << ',' << inst.N << ',' << inst.k
          << ',' << format_double(inst.g) << ',' << format_double(inst.h) << ','
          << format_double(sf.t_star[j]) << '\n';
    }
    close_output(out, path);
    files.files.push_back(path);
    curves.push_back({{"file", name},
                      {"label", std::string("t_star vs ") + to_string(sf.series.axis)},
                      {"style", "solid-black"},
                      {"kind", "scatter"},
                      {"x_column", "value"},
                      {"y_column", "t_star"},
                      {"axis", to_string(sf.series.axis)}});
    curves.push_back({{"file", id + "_fits.csv"},
                      {"label", "power fit"},
                      {"style", "fit-overlay"},
                      {"kind", "fit"},
                      {"series", sf.series.name}});
  }

  const fs::path fit_path = out_dir / (id + "_fits.csv");
  auto out = open_output(fit_path);
  out << "series,axis,exponent,coefficient,r_squared,points,expected_exponent\n";
  for (const auto& sf : fits)
    out << sf.series.name << ',' << to_string(sf.series.axis) << ','
        << format_double(sf.fit.exponent) << ',' << format_double(sf.fit.coefficient) << ','
        << format_double(sf.fit.r_squared) << ',' << sf.fit.points << ','
        << format_double(sf.series.expected_exponent) << '\n';
  close_output(out, fit_path);
  files.files.push_back(fit_path);

  json manifest;
  manifest["figure"] = id;
  manifest["caption"] = "runtime scaling with best-fit power functions, panel " + panel;
  manifest["axes"] = {{"x", "parameter"}, {"y", "runtime"}};
  manifest["curves"] = curves;
  files.manifest = out_dir / (id + "_manifest.json");
  auto mout = open_output(files.manifest);
  mout << manifest.dump(2) << '\n';
  close_output(mout, files.manifest);
  return files;
}

ScalingSeries make_series(const std::string& panel, const std::string& name, Axis axis,
                          ProblemInstance base, const std::vector<double>& values,
                          double expected) {
  ScalingSeries s;
  s.panel = panel;
  s.name = name;
  s.axis = axis;
  s.expected_exponent = expected;
  for (double v : values) s.instances.push_back(with_axis(base, axis, v));
  return s;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", value);
  return buf;
}

void write_trajectory_csv(const Trajectory& trajectory, const fs::path& path) {
  auto out = open_output(path);
  out << "t,x,alpha_re,alpha_im,beta_re,beta_im,gamma,norm_err\n";
  for (const auto& s : trajectory.samples)
    out << format_double(s.t) << ',' << format_double(s.x) << ','
        << format_double(s.state(0).real()) << ',' << format_double(s.state(0).imag()) << ','
        << format_double(s.state(1).real()) << ',' << format_double(s.state(1).imag()) << ','
        << format_double(s.gamma) << ',' << format_double(s.norm_err) << '\n';
  close_output(out, path);
}

const char* to_string(SweepOutput output) {
  switch (output) {
    case SweepOutput::Trajectory: return "trajectory";
    case SweepOutput::TStar: return "t_star";
    case SweepOutput::THalf: return "t_half";
    case SweepOutput::Width: return "width";
    case SweepOutput::XPlus: return "x_plus";
    case SweepOutput::Classification: return "classification";
  }
  return "?";
}

SweepOutput parse_sweep_output(const std::string& name) {
  for (auto o : {SweepOutput::Trajectory, SweepOutput::TStar, SweepOutput::THalf,
                 SweepOutput::Width, SweepOutput::XPlus, SweepOutput::Classification})
    if (name == to_string(o)) return o;
  throw DomainError("unknown sweep output '" + name + "'");
}

SweepSpec parse_sweep_spec(const std::string& text) {
  SweepSpec spec;
  bool have_axis = false, have_values = false;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "sweep spec line " + std::to_string(lineno);
    if (eq == std::string::npos) throw DomainError(where + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "N" || key == "k") {
      const double v = parse_number(value, where);
      if (v != std::floor(v)) throw DomainError(where + ": " + key + " must be an integer");
      (key == "N" ? spec.base.N : spec.base.k) = static_cast<std::int64_t>(v);
    } else if (key == "g") {
      spec.base.g = parse_number(value, where);
    } else if (key == "h") {
      spec.base.h = parse_number(value, where);
    } else if (key == "axis") {
      spec.axis = parse_axis(value);
      have_axis = true;
    } else if (key == "values") {
      spec.values.clear();
      if (value.find(':') != std::string::npos) {
        const auto p = split(value, ':');
        if (p.size() != 3) throw DomainError(where + ": range must be start:stop:step");
        spec.values = range(parse_number(p[0], where), parse_number(p[1], where),
                            parse_number(p[2], where));
      } else {
        for (const auto& v : split(value, ',')) spec.values.push_back(parse_number(v, where));
      }
      have_values = true;
    } else if (key == "outputs") {
      spec.outputs.clear();
      for (const auto& o : split(value, ',')) spec.outputs.push_back(parse_sweep_output(o));
    } else if (key == "epsilon") {
      spec.epsilon = parse_number(value, where);
    } else if (key == "t_max") {
      spec.config.t_max = parse_number(value, where);
    } else {
      throw DomainError(where + ": unknown key '" + key + "'");
    }
  }
  if (!have_axis) throw DomainError("sweep spec: missing axis");
  if (!have_values || spec.values.empty()) throw DomainError("sweep spec: values empty");
  if (spec.outputs.empty())
    spec.outputs = {SweepOutput::TStar, SweepOutput::THalf, SweepOutput::Width,
                    SweepOutput::XPlus, SweepOutput::Classification};
  spec.config.sample_dt = std::min(spec.config.sample_dt, spec.config.t_max);
  spec.config.check();
  return spec;
}

std::vector<const SweepPoint*> SweepResult::failures() const {
  std::vector<const SweepPoint*> out;
  for (const auto& p : points)
    if (!p.error.empty()) out.push_back(&p);
  return out;
}

int default_jobs() {
  if (const char* env = std::getenv("NLWALK_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 1;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto count = static_cast<std::size_t>(std::max(1, workers));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(count, n); ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

SweepResult run_sweep(const SweepSpec& spec, int workers) {
  if (spec.values.empty()) throw DomainError("sweep values empty");
  SweepResult result;
  result.spec = spec;
  result.points.resize(spec.values.size());
  auto wants = [&](SweepOutput o) {
    return std::find(spec.outputs.begin(), spec.outputs.end(), o) != spec.outputs.end();
  };
  parallel_for(spec.values.size(), workers, [&](std::size_t i) {
    SweepPoint& p = result.points[i];
    p.index = i;
    p.value = spec.values[i];
    try {
      p.instance = validate(with_axis(spec.base, spec.axis, spec.values[i]));
      const auto s = summarize(p.instance, spec.epsilon);
      if (wants(SweepOutput::TStar)) p.t_star = s.t_star;
      if (wants(SweepOutput::THalf)) p.t_half = s.t_half;
      if (wants(SweepOutput::Width))
        p.width = s.width_infinite ? std::numeric_limits<double>::infinity() : s.width;
      if (wants(SweepOutput::XPlus)) p.x_plus = s.plateau_height;
      if (wants(SweepOutput::Classification)) p.classification = classification_label(s.classification);
      if (wants(SweepOutput::Trajectory)) p.trajectory = integrate(p.instance, spec.config);
    } catch (const Error& e) {
      p.error = e.what();
      p.error_family = e.family();
    }
  });
  return result;
}

std::vector<fs::path> write_sweep(const SweepResult& result, const fs::path& stem) {
  if (stem.has_parent_path()) ensure_dir(stem.parent_path());
  std::vector<fs::path> written;
  const fs::path table = fs::path(stem.string() + ".csv");
  auto out = open_output(table);
  out << "index,axis_" << to_string(result.spec.axis) << ",N,k,g,h";
  for (auto o : result.spec.outputs)
    if (o != SweepOutput::Trajectory) out << ',' << to_string(o);
  out << ",error\n";
  for (const auto& p : result.points) {
    out << p.index << ',' << format_double(p.value) << ',' << p.instance.N << ',' << p.instance.k
        << ',' << format_double(p.instance.g) << ',' << format_double(p.instance.h);
    for (auto o : result.spec.outputs) {
      switch (o) {
        case SweepOutput::Trajectory: continue;
        case SweepOutput::TStar: out << ',' << opt(p.t_star); break;
        case SweepOutput::THalf: out << ',' << opt(p.t_half); break;
        case SweepOutput::Width: out << ',' << opt(p.width); break;
        case SweepOutput::XPlus: out << ',' << opt(p.x_plus); break;
        case SweepOutput::Classification: out << ',' << p.classification; break;
      }
    }
    std::string err = p.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out << ',' << err << '\n';
  }
  close_output(out, table);
  written.push_back(table);
  for (const auto& p : result.points) {
    if (!p.trajectory) continue;
    const fs::path path = fs::path(stem.string() + "_" + std::to_string(p.index) + ".csv");
    write_trajectory_csv(*p.trajectory, path);
    written.push_back(path);
  }
  return written;
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v = {"fig2a", "fig2b"};
    for (char c = 'a'; c <= 'l'; ++c) v.push_back(std::string("fig3") + c);
    v.push_back("fig4");
    v.push_back("fig5");
    for (char c = 'a'; c <= 'e'; ++c) v.push_back(std::string("fig6") + c);
    return v;
  }();
  return ids;
}

FigureFiles figure_dataset(const std::string& id, const fs::path& out_dir, int workers) {
  const auto& ids = figure_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    throw DomainError("unknown figure id '" + id + "'");
  if (id.starts_with("fig2") || id.starts_with("fig3")) return fig2_or_3(id, out_dir, workers);
  if (id == "fig4") return fig4(out_dir, workers);
  if (id == "fig5") return fig5(out_dir, workers);
  return fig6(id, out_dir, workers);
}

std::vector<ScalingSeries> scaling_panel(const std::string& panel) {
  const auto n_axis = range(1000, 3000, 100);
  const auto g_axis = range(400, 600, 10);
  const auto h_axis = range(4, 20, 1);
  std::vector<ScalingSeries> s;
  if (panel == "a") {
    s.push_back(make_series(panel, "N", Axis::N, {0, 4, 500, 4}, n_axis, 0.5));
    s.push_back(make_series(panel, "g", Axis::g, {1000, 4, 0, 4}, g_axis, -0.5));
    s.push_back(make_series(panel, "hk", Axis::hk, {1000, 0, 500, 0}, h_axis, 0.0));
  } else if (panel == "b") {
    s.push_back(make_series(panel, "N", Axis::N, {0, 100, 4, 100}, n_axis, 0.5));
    s.push_back(make_series(panel, "g", Axis::g, {10000, 2000, 0, 2000}, g_axis, 0.0));
    s.push_back(make_series(panel, "hk", Axis::hk, {10000, 0, 4, 0}, range(400, 600, 10), -0.5));
  } else if (panel == "c") {
    s.push_back(make_series(panel, "N", Axis::N, {0, 50, 500, 4}, n_axis, 0.5));
    s.push_back(make_series(panel, "g", Axis::g, {1000, 50, 0, 4}, g_axis, -0.5));
    s.push_back(make_series(panel, "k", Axis::k, {10000, 0, 500, 4}, range(50, 100, 2), 0.0));
    s.push_back(make_series(panel, "h", Axis::h, {10000, 50, 500, 0}, h_axis, 0.0));
  } else if (panel == "d") {
    s.push_back(make_series(panel, "N", Axis::N, {0, 200, 50, 4}, n_axis, 0.5));
    s.push_back(make_series(panel, "g", Axis::g, {100000, 10000, 0, 4}, g_axis, 0.0));
    s.push_back(make_series(panel, "k", Axis::k, {10000000, 0, 1000, 4},
                            range(10000, 30000, 1000), -0.5));
    s.push_back(make_series(panel, "h", Axis::h, {10000, 500, 100, 0}, h_axis, 0.0));
  } else if (panel == "e") {
    s.push_back(make_series(panel, "N", Axis::N, {0, 400, 4, 200}, n_axis, 0.5));
    s.push_back(make_series(panel, "g", Axis::g, {10000, 500, 0, 100}, range(10, 50, 1), 0.0));
    s.push_back(make_series(panel, "k", Axis::k, {100000, 0, 4, 100}, range(1000, 4000, 100),
                            -0.5));
    s.push_back(make_series(panel, "h", Axis::h, {100000, 1000, 4, 0}, range(100, 300, 10), 0.0));
  } else {
    throw DomainError("unknown scaling panel '" + panel + "'");
  }
  return s;
}

SeriesFit fit_series(const ScalingSeries& series) {
  SeriesFit sf;
  sf.series = series;
  std::vector<double> xs;
  for (const auto& inst : series.instances) {
    xs.push_back(axis_value(inst, series.axis));
    sf.t_star.push_back(runtime_peak(inst));
  }
  sf.fit = fit_power(xs, sf.t_star);
  return sf;
}

std::vector<std::int64_t> runtime_n_grid() {
  std::vector<std::int64_t> grid;
  for (int j = 0; j <= 30; ++j)
    grid.push_back(std::llround(std::pow(10.0, 3.0 + j / 10.0)));
  return grid;
}

double numeric_peak_width(const ProblemInstance& instance, double epsilon,
                          IntegratorConfig config) {
  const auto inst = validate(instance);
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  const double t_star = runtime_peak(inst);
  config.t_max = std::max(config.t_max, 1.5 * t_star + 1.0);
  EventRequest req;
  req.crossings = {1.0 - epsilon};
  req.require_terminal = true;
  req.stop_when_resolved = true;
  const auto traj = integrate(inst, config, req);
  const auto up = traj.crossing(1.0 - epsilon);
  const auto peak = traj.find(EventKind::FirstPeak);
  if (!up || !peak) throw UnreachableError("peak does not reach 1 - epsilon");
  return 2.0 * (peak->t - up->t);
}

double simulated_plateau(const ProblemInstance& instance, IntegratorConfig config) {
  const auto inst = validate(instance);
  EventRequest req;
  req.stop_when_resolved = true;
  req.require_terminal = true;
  try {
    const auto traj = integrate(inst, config, req);
    if (const auto p = traj.find(EventKind::PlateauDetected)) return p->x;
    if (traj.find(EventKind::FirstPeak))
      throw RegimeError("trajectory peaks instead of plateauing for " + describe(inst));
    return traj.samples.back().x;
  } catch (const HorizonError& e) {
    return e.partial().samples.back().x;
  }
}

ResourceEstimate resources(const std::vector<ProblemInstance>& family, double epsilon,
                           double tau) {
  if (!(tau > 0.0)) throw DomainError("tau must be positive");
  ResourceEstimate est;
  est.tau = tau;
  est.epsilon = epsilon;
  std::vector<double> ns, t, bec, clock, st;
  for (const auto& raw : family) {
    const auto s = summarize(raw, epsilon);
    ResourceRow row;
    row.instance = s.instance;
    const bool plateau = s.classification.regime.kind == Regime::Plateau;
    row.t_run = plateau ? *s.t_half : *s.t_star;
    row.width = plateau ? std::numeric_limits<double>::infinity() : *s.width;
    const double n = static_cast<double>(s.instance.N);
    row.n_bec_lower = n / (row.t_run * row.t_run);
    row.n_clock = std::max(1.0 / (row.width * std::sqrt(tau)), 1.0);
    row.space_time = row.n_clock * row.t_run;
    est.rows.push_back(row);
    ns.push_back(n);
    t.push_back(row.t_run);
    bec.push_back(row.n_bec_lower);
    clock.push_back(row.n_clock);
    st.push_back(row.space_time);
  }
  est.t_run = fit_power(ns, t);
  est.n_bec_lower = fit_power(ns, bec);
  est.n_clock = fit_power(ns, clock);
  est.space_time = fit_power(ns, st);
  return est;
}

const std::vector<std::string>& resource_family_names() {
  static const std::vector<std::string> names = {"sqrtN-sharp", "sqrtN-wide", "linear-wide",
                                                 "linear-plateau"};
  return names;
}

std::vector<ProblemInstance> resource_family(const std::string& name) {
  const std::int64_t ns[] = {10000, 30000, 100000, 300000, 1000000};
  std::vector<ProblemInstance> family;
  for (auto n : ns) {
    const double dn = static_cast<double>(n);
    if (name == "sqrtN-sharp")
      family.push_back({n, 3, std::sqrt(dn), 1.0});
    else if (name == "sqrtN-wide")
      family.push_back({n, 3, std::sqrt(dn), 3.0});
    else if (name == "linear-wide")
      family.push_back({n, 3, dn - 1.0, 3.0});
    else if (name == "linear-plateau")
      family.push_back({n, 3, dn - 1.0, 4.0});
    else
      throw DomainError("unknown resource family '" + name + "'");
  }
  return family;
}

}  // namespace nlwalk
