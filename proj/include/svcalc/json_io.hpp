#pragma once

// JSON forms for the file interfaces: regions, polygons, plot specs,
// measure specs, schedules, field and functional specs. Finite coordinates
// round-trip bit-exactly; infinite endpoints read and write as the strings
// "inf" / "-inf".

#include <json.hpp>
#include <string>

#include "svcalc/measure.hpp"
#include "svcalc/setrep.hpp"
#include "svcalc/shape.hpp"
#include "svcalc/svdiff.hpp"
#include "svcalc/svmap.hpp"

namespace svcalc {

nlohmann::json region_to_json(const RegionSet& a);
RegionSet region_from_json(const nlohmann::json& j);

nlohmann::json sampled_to_json(const SampledSet& s);

nlohmann::json polygon_to_json(const Polygon& p);
Polygon polygon_from_json(const nlohmann::json& j);

ParamDomain domain_from_json(const nlohmann::json& j);

// {"domain": {...}, "kind": "interval_map"|"constant"|"translate_family"|"expr",
//  "params": {...}}
SetPlot plot_from_json(const nlohmann::json& spec);

// {"measure": "gaussian"|"lebesgue"|"uniform", "params": {...}}
MeasureModel measure_from_json(const nlohmann::json& spec);

// {"function": "bump", "support": [lo, hi], "mollifier": true}
TestFunction testfunction_from_json(const nlohmann::json& spec);

std::vector<OpenBox> opens_from_json(const nlohmann::json& j);

// "n0:N" (harmonic, both integers) or "h:levels" (geometric, h carries a dot)
DiffSchedule schedule_from_string(const std::string& spec);

// "V(x)=x", "V(x,y)=(-y, x)", "rotation", "0", ...
VectorField field_from_spec(const std::string& spec);

// "volume", "perimeter", or "integral:<expression in x, y>"
ShapeFunctional functional_from_spec(const std::string& spec);

nlohmann::json path_diff_to_json(const PathDiffResult& r);
nlohmann::json fomin_to_json(const FominResult& r);
nlohmann::json adherence_to_json(const AdherenceResult& r);

}  // namespace svcalc
