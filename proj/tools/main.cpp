// Command-line driver: scenario execution and ad-hoc derivative, selection
// and lower-semicontinuity runs from config files. Exit codes: 0 pass,
// 1 fail (a scenario or check missed its target), 2 usage/config error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "svcalc/expr.hpp"
#include "svcalc/json_io.hpp"
#include "svcalc/report.hpp"
#include "svcalc/scenarios.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace svcalc;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::vector<double> parse_direction(const std::string& s) {
  std::vector<double> v;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    v.push_back(std::stod(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (v.empty()) throw std::invalid_argument("direction: expected comma-separated numbers");
  return v;
}

struct CommonOpts {
  std::string config_file;
  std::string out_dir = "out";
  std::string format = "both";
  std::string schedule;
  int grid = 81;
  double tol = -1.0;  // negative means no override

  // one entry per subcommand carrying the flag; only the parsed subcommand
  // can have a nonzero count
  std::vector<CLI::Option*> out_opts, format_opts, grid_opts, tol_opts, schedule_opts;

  static bool given(const std::vector<CLI::Option*>& opts) {
    for (const auto* o : opts)
      if (o->count()) return true;
    return false;
  }

  // config file fills anything the command line left untouched
  void apply_config() {
    if (config_file.empty()) return;
    const json cfg = load_json(config_file);
    if (!given(out_opts) && cfg.contains("out")) out_dir = cfg["out"].get<std::string>();
    if (!given(format_opts) && cfg.contains("format")) format = cfg["format"].get<std::string>();
    if (!given(grid_opts) && cfg.contains("grid")) grid = cfg["grid"].get<int>();
    if (!given(tol_opts) && cfg.contains("tol")) tol = cfg["tol"].get<double>();
    if (!given(schedule_opts) && cfg.contains("schedule"))
      schedule = cfg["schedule"].get<std::string>();
    if (format != "json" && format != "csv" && format != "both")
      throw std::invalid_argument("config: format must be json, csv or both");
    if (grid < 2) throw std::invalid_argument("config: grid needs at least two points");
  }

  ScenarioConfig scenario_config() const {
    ScenarioConfig cfg;
    cfg.grid_points = grid;
    if (tol >= 0.0) cfg.tol = tol;
    if (!schedule.empty()) cfg.schedule = schedule_from_string(schedule);
    return cfg;
  }
  DiffSchedule diff_schedule(DiffSchedule fallback) const {
    return schedule.empty() ? fallback : schedule_from_string(schedule);
  }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_file, "json file with defaults for these options");
  o.out_opts.push_back(cmd->add_option("--out", o.out_dir, "output directory"));
  o.format_opts.push_back(cmd->add_option("--format", o.format, "json|csv|both")
                              ->check(CLI::IsMember({"json", "csv", "both"})));
  o.grid_opts.push_back(
      cmd->add_option("--grid", o.grid, "sweep grid points")->check(CLI::PositiveNumber));
  o.tol_opts.push_back(cmd->add_option("--tol", o.tol, "tolerance override"));
  o.schedule_opts.push_back(
      cmd->add_option("--schedule", o.schedule, "n0:N (harmonic) or h:levels (geometric)"));
}

int run_scenarios(const std::vector<std::string>& names, const CommonOpts& o) {
  bool all_pass = true;
  std::vector<std::vector<double>> summary_rows;
  json summary = json::array();
  for (const auto& name : names) {
    Verdict v = run_scenario(name, o.scenario_config());
    emit_verdict(o.out_dir, v, o.format);
    summary.push_back({{"name", v.name}, {"pass", v.pass}});
    std::cout << (v.pass ? "[pass] " : "[FAIL] ") << v.name << "  (" << v.runtime_ms << " ms)\n"
              << "       " << v.narrative << "\n";
    all_pass = all_pass && v.pass;
  }
  write_json_file(fs::path(o.out_dir) / "summary.json", summary);
  std::ostringstream csv;
  csv << "name,pass\n";
  for (const auto& e : summary)
    csv << e["name"].get<std::string>() << "," << (e["pass"].get<bool>() ? 1 : 0) << "\n";
  atomic_write_text(fs::path(o.out_dir) / "summary.csv", csv.str());
  return all_pass ? 0 : 1;
}

int cmd_shape_deriv(const std::string& polygon_file, const std::string& field_spec,
                    const std::string& functional_spec, bool two_sided, const CommonOpts& o) {
  const Polygon omega = polygon_from_json(load_json(polygon_file));
  const VectorField field = field_from_spec(field_spec);
  const ShapeFunctional j = functional_from_spec(functional_spec);
  const DiffSchedule sched = o.diff_schedule(DiffSchedule::geometric(0.05, 6));

  const PathDiffResult r = eulerian_derivative(j, omega, field, sched, two_sided);
  const double flux = hadamard_boundary_integral(omega, field);

  json out = path_diff_to_json(r);
  out["boundary_flux"] = flux;
  out["functional"] = functional_spec;
  out["field"] = field_spec;
  write_json_file(fs::path(o.out_dir) / "shape-deriv.json", out);
  if (o.format != "json") {
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < r.steps.size(); ++i) rows.push_back({r.steps[i], r.quotients[i]});
    write_csv(fs::path(o.out_dir) / "shape-deriv-quotients.csv", {"step", "quotient"}, rows);
    XYSeries path{"J_along_flow", {}};
    for (double t : linspace(0.0, r.steps.front(), 33))
      path.rows.push_back({t, evaluate(j, deform(omega, field, t))});
    write_xy(fs::path(o.out_dir) / "shape-deriv-path.dat", path);
  }
  std::cout << "estimate " << r.estimate << "  error " << r.err_estimate << "  boundary flux "
            << flux << "\n";
  return r.converged ? 0 : 1;
}

int cmd_fomin(const std::string& measure_file, const std::string& set_file,
              const std::string& direction, const CommonOpts& o) {
  const MeasureModel m = measure_from_json(load_json(measure_file));
  const RegionSet a = region_from_json(load_json(set_file));
  const std::vector<double> v = parse_direction(direction);
  const DiffSchedule sched = o.diff_schedule(DiffSchedule::geometric(0.125, 6));

  const FominResult r = fomin_derivative(m, a, v, sched);
  write_json_file(fs::path(o.out_dir) / "fomin.json", fomin_to_json(r));
  if (o.format != "json") {
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < r.steps.size(); ++i) rows.push_back({r.steps[i], r.quotients[i]});
    write_csv(fs::path(o.out_dir) / "fomin-quotients.csv", {"step", "central_quotient"}, rows);
  }
  std::cout << "estimate " << r.estimate << "  error " << r.err_estimate
            << "  antisymmetry residual " << r.antisymmetry_residual << "\n";
  return r.converged ? 0 : 1;
}

int cmd_select(const std::string& plot_file, double r0, double x0, const std::string& strategy,
               const CommonOpts& o) {
  SetPlot plot = plot_from_json(load_json(plot_file));
  Selection s;
  if (strategy == "weak") {
    s = weak_select(plot, r0);
  } else {
    const SelectStrategy st = strategy == "convex" ? SelectStrategy::convex
                                                   : SelectStrategy::projection_tracking;
    s = select(plot, r0, x0, st);
  }
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < s.params.size(); ++i)
    rows.push_back({s.params[i][0], s.values[i][0], s.residuals[i]});
  write_csv(fs::path(o.out_dir) / "selection.csv", {"r", "sigma", "residual"}, rows);
  json summary{{"anchor_r", s.anchor_param},
               {"anchor_x", s.anchor_value},
               {"max_residual", s.max_residual},
               {"strategy", strategy}};
  write_json_file(fs::path(o.out_dir) / "selection.json", summary);
  std::cout << "selection over " << rows.size() << " grid points, max residual "
            << s.max_residual << "\n";
  return s.max_residual <= 1e-12 ? 0 : 1;
}

int cmd_lsc(const std::string& plot_file, const std::string& opens_file, double slope_tol,
            const CommonOpts& o) {
  SetPlot plot = plot_from_json(load_json(plot_file));
  const auto opens = opens_from_json(load_json(opens_file));
  const LscReport rep = lsc_check(plot, opens, slope_tol);

  json jv = json::array();
  for (const auto& viol : rep.violations)
    jv.push_back({{"r", viol.r},
                  {"open_index", viol.open_index},
                  {"neighbor", viol.neighbor},
                  {"witness_gap", viol.witness_gap}});
  json out{{"grid_points", rep.grid_points},
           {"opens", rep.opens},
           {"slope_tol", rep.slope_tol},
           {"violations", jv},
           {"boundary_misses", rep.boundary_misses.size()}};
  write_json_file(fs::path(o.out_dir) / "lsc.json", out);
  if (o.format != "json") {
    std::vector<std::vector<double>> rows;
    for (const auto& viol : rep.violations)
      rows.push_back({viol.r[0], static_cast<double>(viol.open_index), viol.witness_gap});
    write_csv(fs::path(o.out_dir) / "lsc-violations.csv", {"r", "open_index", "witness_gap"},
              rows);
  }
  std::cout << rep.violations.size() << " violation(s), " << rep.boundary_misses.size()
            << " boundary miss(es) over " << rep.grid_points << " grid points\n";
  return rep.violations.empty() ? 0 : 1;
}

int cmd_svdiff(const std::string& functional_expr, const std::string& family_file,
               const CommonOpts& o) {
  const json fam_json = load_json(family_file);
  const json paths = fam_json.at("paths");
  if (paths.empty()) throw std::invalid_argument("path family: no paths");

  std::vector<std::vector<Expr>> components;
  size_t arity = 0;
  for (const auto& jp : paths) {
    std::vector<Expr> comp;
    for (const auto& je : jp.at("components"))
      comp.push_back(Expr::parse(je.get<std::string>(), {"t"}));
    if (comp.empty()) throw std::invalid_argument("path family: empty component list");
    arity = std::max(arity, comp.size());
    components.push_back(std::move(comp));
  }
  std::vector<std::string> vars{"x", "y", "z"};
  vars.resize(std::max<size_t>(arity, 1));
  const Expr phi = Expr::parse(functional_expr, vars);

  std::vector<std::function<double(double)>> along;
  for (const auto& comp : components) {
    along.push_back([comp, phi](double t) {
      std::vector<double> p;
      p.reserve(comp.size());
      for (const auto& e : comp) p.push_back(e(t));
      const double v = phi(p);
      if (!std::isfinite(v))
        throw std::invalid_argument("functional undefined along the path (non-finite value)");
      return v;
    });
  }
  const DiffSchedule sched = o.diff_schedule(DiffSchedule::harmonic(4, 64));
  const AdherenceResult res = adherence_derivative_values(along, sched);
  write_json_file(fs::path(o.out_dir) / "svdiff.json", adherence_to_json(res));
  if (o.format != "json") {
    std::vector<std::vector<double>> rows;
    for (size_t p = 0; p < res.per_path.size(); ++p)
      for (size_t k = 0; k < res.per_path[p].sequence.size(); ++k)
        rows.push_back({static_cast<double>(p), sched.steps[k], res.per_path[p].sequence[k]});
    write_csv(fs::path(o.out_dir) / "svdiff-quotients.csv", {"path", "step", "quotient"}, rows);
  }
  std::cout << res.clusters.size() << " cluster(s):";
  for (const auto& c : res.clusters)
    std::cout << "  " << c.value << " (radius " << c.radius << ", count " << c.count << ")";
  std::cout << "\n";
  for (const auto& p : res.per_path)
    if (p.divergent) {
      std::cout << "warning: a path has a divergent quotient sequence\n";
      return 1;
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"svcalc: box-exact set calculus, set-valued derivatives, shape derivatives"};
  app.require_subcommand(1);

  CommonOpts o;

  auto* sc = app.add_subcommand("scenario", "run a named scenario (or all of them)");
  std::string scenario_name;
  bool all = false;
  sc->add_option("name", scenario_name, "scenario name");
  sc->add_flag("--all", all, "run every scenario");
  add_common(sc, o);

  auto* sd = app.add_subcommand("shape-deriv", "eulerian derivative of a shape functional");
  std::string polygon_file, field_spec = "V(x)=x", functional_spec = "volume";
  bool two_sided = false;
  sd->add_option("polygon", polygon_file, "polygon json file")->required();
  sd->add_option("--field", field_spec, "vector field spec, e.g. V(x)=x or V(x,y)=(-y,x)");
  sd->add_option("--functional", functional_spec, "volume | perimeter | integral:<expr>");
  sd->add_flag("--two-sided", two_sided, "central differences instead of one-sided");
  add_common(sd, o);

  auto* fo = app.add_subcommand("fomin", "directional derivative of a measure");
  std::string measure_file, set_file, direction = "1";
  fo->add_option("measure", measure_file, "measure spec json")->required();
  fo->add_option("set", set_file, "region json")->required();
  fo->add_option("--direction", direction, "comma-separated direction vector");
  add_common(fo, o);

  auto* se = app.add_subcommand("select", "selection through a set-valued plot");
  std::string plot_file, strategy = "convex";
  double r0 = 0.0, x0 = 0.0;
  se->add_option("plot", plot_file, "plot spec json")->required();
  se->add_option("--r0", r0, "anchor parameter");
  se->add_option("--x0", x0, "anchor value");
  se->add_option("--strategy", strategy, "convex | tracking | weak")
      ->check(CLI::IsMember({"convex", "tracking", "weak"}));
  add_common(se, o);

  auto* ls = app.add_subcommand("lsc", "discrete lower-semicontinuity check");
  std::string opens_file;
  double slope_tol = 10.0;
  ls->add_option("plot", plot_file, "plot spec json")->required();
  ls->add_option("opens", opens_file, "open boxes json")->required();
  ls->add_option("--slope-tol", slope_tol, "witness transport tolerance (in pitches)");
  add_common(ls, o);

  auto* sv = app.add_subcommand("svdiff", "adherence derivative along a path family");
  std::string functional_expr;
  std::string family_file;
  sv->add_option("functional", functional_expr, "expression in x, y, z")->required();
  sv->add_option("paths", family_file, "path family json")->required();
  add_common(sv, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    o.apply_config();
    if (sc->parsed()) {
      if (all) return run_scenarios(scenario_names(), o);
      if (scenario_name.empty())
        throw std::invalid_argument("scenario: give a name or --all");
      return run_scenarios({scenario_name}, o);
    }
    if (sd->parsed()) return cmd_shape_deriv(polygon_file, field_spec, functional_spec, two_sided, o);
    if (fo->parsed()) return cmd_fomin(measure_file, set_file, direction, o);
    if (se->parsed()) return cmd_select(plot_file, r0, x0, strategy, o);
    if (ls->parsed()) return cmd_lsc(plot_file, opens_file, slope_tol, o);
    if (sv->parsed()) return cmd_svdiff(functional_expr, family_file, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
