#include "svcalc/json_io.hpp"

#include <cmath>

#include "svcalc/expr.hpp"

namespace svcalc {

namespace {

using nlohmann::json;

json endpoint_to_json(double x) {
  if (x == kInf) return "inf";
  if (x == -kInf) return "-inf";
  return x;
}

double endpoint_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    throw std::invalid_argument("region json: bad endpoint string '" + s + "'");
  }
  return j.get<double>();
}

json box_to_json(const Box& b) {
  json axes = json::array();
  for (const auto& iv : b.axes)
    axes.push_back(json::array({endpoint_to_json(iv.lo), endpoint_to_json(iv.hi)}));
  return axes;
}

Box box_from_json(const json& j) {
  std::vector<Interval> axes;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("region json: an axis interval is a [lo, hi] pair");
    axes.push_back(Interval(endpoint_from_json(pair[0]), endpoint_from_json(pair[1])));
  }
  return Box(std::move(axes));
}

}  // namespace

json region_to_json(const RegionSet& a) {
  json j{{"dim", a.dim()}};
  if (a.universe()) j["universe"] = box_to_json(*a.universe());
  json boxes = json::array();
  for (const auto& b : a.boxes()) boxes.push_back(box_to_json(b));
  j["boxes"] = std::move(boxes);
  return j;
}

RegionSet region_from_json(const json& j) {
  const int dim = j.at("dim").get<int>();
  std::vector<Box> boxes;
  for (const auto& jb : j.at("boxes")) boxes.push_back(box_from_json(jb));
  RegionSet r = RegionSet::of(dim, std::move(boxes));
  if (j.contains("universe")) r = r.with_universe(box_from_json(j["universe"]));
  return r;
}

json sampled_to_json(const SampledSet& s) {
  json pts = json::array();
  for (const auto& p : s.points) pts.push_back(p);
  return json{{"dim", s.dim}, {"pitch", s.pitch}, {"points", std::move(pts)}};
}

json polygon_to_json(const Polygon& p) {
  json verts = json::array();
  for (const auto& v : p.vertices()) verts.push_back(json::array({v[0], v[1]}));
  return json{{"vertices", std::move(verts)}};
}

Polygon polygon_from_json(const json& j) {
  std::vector<Point2> verts;
  for (const auto& v : j.at("vertices")) verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  return Polygon(std::move(verts));
}

ParamDomain domain_from_json(const json& j) {
  ParamDomain d;
  if (j.at("lo").is_array()) {
    d.lo = j["lo"].get<std::vector<double>>();
    d.hi = j.at("hi").get<std::vector<double>>();
  } else {
    d.lo = {j["lo"].get<double>()};
    d.hi = {j.at("hi").get<double>()};
  }
  if (j.contains("pitch")) {
    return ParamDomain::from_pitch(d.lo, d.hi, j["pitch"].get<double>());
  }
  if (j.contains("points")) {
    if (j["points"].is_array()) d.points = j["points"].get<std::vector<int>>();
    else d.points.assign(d.lo.size(), j["points"].get<int>());
  } else {
    d.points.assign(d.lo.size(), 81);
  }
  d.validate();
  return d;
}

SetPlot plot_from_json(const json& spec) {
  const ParamDomain dom = domain_from_json(spec.at("domain"));
  const std::string kind = spec.at("kind").get<std::string>();
  const json params = spec.value("params", json::object());

  if (kind == "interval_map") {
    const Expr f = Expr::parse(params.at("f").get<std::string>(), {"r"});
    const Expr g = Expr::parse(params.at("g").get<std::string>(), {"r"});
    return interval_map([f](double r) { return f(r); }, [g](double r) { return g(r); }, dom);
  }
  if (kind == "constant") {
    return constant_plot(region_from_json(params.at("value")), dom);
  }
  if (kind == "translate_family") {
    RegionSet base = region_from_json(params.at("base"));
    std::vector<double> v = params.at("direction").get<std::vector<double>>();
    const Expr profile = Expr::parse(params.at("profile").get<std::string>(), {"t"});
    return translate_family(std::move(base), std::move(v),
                            [profile](double t) { return profile(t); }, dom);
  }
  if (kind == "expr") {
    const int dim = params.at("dim").get<int>();
    std::vector<std::vector<std::pair<Expr, Expr>>> boxes;
    for (const auto& jb : params.at("boxes")) {
      std::vector<std::pair<Expr, Expr>> axes;
      for (const auto& jax : jb)
        axes.emplace_back(Expr::parse(jax.at(0).get<std::string>(), {"r"}),
                          Expr::parse(jax.at(1).get<std::string>(), {"r"}));
      boxes.push_back(std::move(axes));
    }
    SetPlot p;
    p.domain = dom;
    p.target_dim = dim;
    p.kind = PlotKind::generic;
    p.eval = [boxes, dim](std::span<const double> r) {
      std::vector<Box> bs;
      for (const auto& axes : boxes) {
        std::vector<Interval> ivs;
        for (const auto& [lo, hi] : axes) ivs.push_back(Interval(lo(r[0]), hi(r[0])));
        bs.push_back(Box(std::move(ivs)));
      }
      return RegionSet::of(dim, std::move(bs));
    };
    return p;
  }
  throw std::invalid_argument(
      "plot json: kind must be interval_map, constant, translate_family or expr");
}

MeasureModel measure_from_json(const json& spec) {
  const std::string kind = spec.at("measure").get<std::string>();
  const json params = spec.value("params", json::object());
  const int dim = params.value("dim", 1);
  if (kind == "gaussian") return MeasureModel::gaussian(dim);
  if (kind == "lebesgue") return MeasureModel::lebesgue(dim);
  if (kind == "uniform") {
    std::vector<std::pair<double, double>> sup;
    for (const auto& js : params.at("supports"))
      sup.emplace_back(js.at(0).get<double>(), js.at(1).get<double>());
    return MeasureModel::uniform(sup);
  }
  throw std::invalid_argument("measure json: kind must be gaussian, lebesgue or uniform");
}

TestFunction testfunction_from_json(const json& spec) {
  const std::string kind = spec.at("function").get<std::string>();
  if (kind != "bump")
    throw std::invalid_argument("test function json: catalog has only 'bump'");
  double lo = -1.0, hi = 1.0;
  if (spec.contains("support")) {
    lo = spec["support"].at(0).get<double>();
    hi = spec["support"].at(1).get<double>();
  }
  if (!(lo < hi)) throw std::invalid_argument("test function json: empty support");
  return TestFunction::bump(0.5 * (lo + hi), 0.5 * (hi - lo), spec.value("mollifier", true));
}

std::vector<OpenBox> opens_from_json(const json& j) {
  std::vector<OpenBox> opens;
  const json& list = j.is_array() ? j : j.at("opens");
  for (const auto& jb : list) opens.push_back(OpenBox{box_from_json(jb)});
  if (opens.empty()) throw std::invalid_argument("opens json: need at least one open box");
  return opens;
}

DiffSchedule schedule_from_string(const std::string& spec) {
  const size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("schedule: expected n0:N (harmonic) or h:levels (geometric)");
  const std::string head = spec.substr(0, colon), tail = spec.substr(colon + 1);
  try {
    if (head.find('.') != std::string::npos || head.find('e') != std::string::npos) {
      return DiffSchedule::geometric(std::stod(head), std::stoi(tail));
    }
    return DiffSchedule::harmonic(std::stoi(head), std::stoi(tail));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("schedule: could not parse '" + spec + "'");
  }
}

VectorField field_from_spec(const std::string& spec) {
  std::string rhs = spec;
  const size_t eq = rhs.find('=');
  if (eq != std::string::npos && rhs.rfind("V(", 0) == 0) rhs = rhs.substr(eq + 1);
  while (!rhs.empty() && rhs.front() == ' ') rhs.erase(rhs.begin());
  while (!rhs.empty() && rhs.back() == ' ') rhs.pop_back();

  if (rhs == "x" || rhs == "radial") return VectorField::radial();
  if (rhs == "0" || rhs == "zero") return VectorField::zero();
  if (rhs == "rotation") return VectorField::rotation();

  if (!rhs.empty() && rhs.front() == '(' && rhs.back() == ')') {
    const std::string inner = rhs.substr(1, rhs.size() - 2);
    int depth = 0;
    size_t split = std::string::npos;
    for (size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      else if (inner[i] == ')') --depth;
      else if (inner[i] == ',' && depth == 0) {
        split = i;
        break;
      }
    }
    if (split != std::string::npos) {
      const Expr vx = Expr::parse(inner.substr(0, split), {"x", "y"});
      const Expr vy = Expr::parse(inner.substr(split + 1), {"x", "y"});
      return VectorField{[vx, vy](Point2 p) { return Point2{vx(p[0], p[1]), vy(p[0], p[1])}; }};
    }
  }
  throw std::invalid_argument(
      "field spec: use V(x)=x, 0, rotation, or a component pair like V(x,y)=(-y, x)");
}

ShapeFunctional functional_from_spec(const std::string& spec) {
  if (spec == "volume") return ShapeFunctional::volume();
  if (spec == "perimeter") return ShapeFunctional::perimeter();
  if (spec.rfind("integral:", 0) == 0) {
    const Expr f = Expr::parse(spec.substr(9), {"x", "y"});
    return ShapeFunctional::integral([f](Point2 p) { return f(p[0], p[1]); });
  }
  throw std::invalid_argument("functional spec: volume, perimeter, or integral:<expr>");
}

json path_diff_to_json(const PathDiffResult& r) {
  json table = json::array();
  for (const auto& col : r.table.columns) table.push_back(col);
  return json{{"estimate", r.estimate},
              {"error_estimate", r.err_estimate},
              {"converged", r.converged},
              {"steps", r.steps},
              {"quotients", r.quotients},
              {"table", std::move(table)}};
}

json fomin_to_json(const FominResult& r) {
  json table = json::array();
  for (const auto& col : r.table.columns) table.push_back(col);
  return json{{"estimate", r.estimate},
              {"error_estimate", r.err_estimate},
              {"antisymmetry_residual", r.antisymmetry_residual},
              {"converged", r.converged},
              {"steps", r.steps},
              {"quotients", r.quotients},
              {"table", std::move(table)}};
}

json adherence_to_json(const AdherenceResult& r) {
  json paths = json::array();
  for (const auto& p : r.per_path) {
    json clusters = json::array();
    for (const auto& c : p.clusters)
      clusters.push_back({{"value", c.value}, {"radius", c.radius}, {"count", c.count}});
    paths.push_back({{"sequence", p.sequence},
                     {"clusters", std::move(clusters)},
                     {"converged", p.converged},
                     {"divergent", p.divergent},
                     {"limit_estimate", p.limit_estimate}});
  }
  json clusters = json::array();
  for (const auto& c : r.clusters)
    clusters.push_back({{"value", c.value}, {"radius", c.radius}, {"count", c.count}});
  return json{{"per_path", std::move(paths)}, {"clusters", std::move(clusters)}};
}

}  // namespace svcalc
