#pragma once

// Set-valued maps as parametrized RegionSet families, selection witnesses,
// a discrete lower-semicontinuity check, graph/relation views, and the
// extension and pushforward operators.
//
// Certificates here are finite-grid witnesses with explicit pitch and
// reported residuals; nothing claims smoothness beyond the grid.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "svcalc/setrep.hpp"

namespace svcalc {

struct ParamDomain {
  std::vector<double> lo, hi;  // finite bounds
  std::vector<int> points;     // per-axis sample counts, >= 2

  static ParamDomain line(double lo, double hi, int n = 81);
  static ParamDomain from_pitch(std::vector<double> lo, std::vector<double> hi, double pitch);

  int dim() const { return static_cast<int>(lo.size()); }
  double pitch(int axis) const;
  size_t grid_size() const;
  // Row-major over axis counts; last axis varies fastest.
  std::vector<std::vector<double>> grid() const;
  std::vector<size_t> neighbors(size_t flat) const;
  void validate() const;
};

enum class PlotKind { generic, interval_map, constant, translate_family, sampled };

struct SetPlot {
  ParamDomain domain;
  int target_dim = 1;
  std::function<RegionSet(std::span<const double>)> eval;
  PlotKind kind = PlotKind::generic;
  // interval-map payload
  std::function<double(double)> f, g;

  RegionSet operator()(std::span<const double> r) const { return eval(r); }
  RegionSet operator()(double r) const { return eval(std::span<const double>(&r, 1)); }
};

// phi(r) = [min(f(r), g(r)), max(f(r), g(r))] on a 1-D domain.
SetPlot interval_map(std::function<double(double)> f, std::function<double(double)> g,
                     ParamDomain dom = ParamDomain::line(-1.0, 1.0));
SetPlot constant_plot(RegionSet value, ParamDomain dom = ParamDomain::line(-1.0, 1.0));
SetPlot translate_family(RegionSet base, std::vector<double> v,
                         std::function<double(double)> profile,
                         ParamDomain dom = ParamDomain::line(-1.0, 1.0));

enum class SelectStrategy { convex, projection_tracking };

struct Selection {
  std::vector<std::vector<double>> params;
  std::vector<std::vector<double>> values;
  std::vector<double> residuals;  // dist(sigma(r), P(r)) per grid point
  std::vector<double> anchor_param;
  std::vector<double> anchor_value;
  double max_residual = 0.0;
};

// Anchored selection: sigma(r0) = x0 exactly, sigma(r) in P(r). The convex
// strategy is defined for interval maps only and has residual exactly zero;
// projection tracking continues the nearest feasible point from the anchor
// outwards (ties broken towards the lexicographically smallest point).
Selection select(const SetPlot& p, std::span<const double> r0, std::span<const double> x0,
                 SelectStrategy strategy);
Selection select(const SetPlot& p, double r0, double x0, SelectStrategy strategy);

// Anchor-free witness: midpoint of the box nearest to the seed value.
Selection weak_select(const SetPlot& p, std::span<const double> r0);
Selection weak_select(const SetPlot& p, double r0);

struct OpenBox {
  Box box;  // the open set is the interior of this box
};

struct LscViolation {
  size_t grid_index = 0;
  std::vector<double> r;
  size_t open_index = 0;
  std::vector<double> neighbor;
  double witness_gap = 0.0;  // distance a witness point had to jump
};

struct LscReport {
  // A witness of phi(r) meeting O that lands farther than slope_tol * pitch
  // from phi(r') marks a genuine jump. Lost intersections within transport
  // reach are benign grid artifacts at the preimage boundary and are listed
  // separately.
  std::vector<LscViolation> violations;
  std::vector<LscViolation> boundary_misses;
  size_t grid_points = 0;
  size_t opens = 0;
  double slope_tol = 10.0;
};

LscReport lsc_check(const SetPlot& phi, const std::vector<OpenBox>& opens,
                    double slope_tol = 10.0);
LscReport lsc_check_serial(const SetPlot& phi, const std::vector<OpenBox>& opens,
                           double slope_tol = 10.0);
LscReport lsc_check_parallel(const SetPlot& phi, const std::vector<OpenBox>& opens,
                             double slope_tol = 10.0);

struct Relation {
  int dim_x = 1, dim_y = 1;
  std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
};

// Sampled graph {(r, y) : y in phi(r)}; values sampled at value_pitch.
Relation graph(const SetPlot& phi, double value_pitch);
// Set-valued map back from a sampled relation; exact at sampled x, nearest
// slice elsewhere. Throws on an empty relation.
SetPlot from_relation(const Relation& rel, ParamDomain dom);
RegionSet def_set(const Relation& rel);
RegionSet image_set(const Relation& rel);

// Extension of phi to sets: union of phi(x) over a pitch-h sample of A.
RegionSet extend(const SetPlot& phi, const RegionSet& a, double pitch);

struct SmoothMap {
  int dim_in = 1, dim_out = 1;
  std::function<std::vector<double>(std::span<const double>)> eval;
  // set when the map is x_i -> scale_i * x_i + offset_i (exact on boxes)
  std::optional<std::pair<std::vector<double>, std::vector<double>>> diag_affine;

  static SmoothMap identity(int dim);
  static SmoothMap scalar(std::function<double(double)> f);
  static SmoothMap diag(std::vector<double> scale, std::vector<double> offset);
  // evaluates outer(inner(x)) literally, so composition is pointwise exact
  static SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);
};

SampledSet pushforward(const SmoothMap& f, const SampledSet& a);
SampledSet pushforward(const SmoothMap& f, const RegionSet& a, double pitch);
RegionSet pushforward_exact(const SmoothMap& f, const RegionSet& a);
// Post-composed plot r |-> f(P(r)), as a sampled point cover.
SetPlot pushforward(const SmoothMap& f, const SetPlot& p, double pitch);

}  // namespace svcalc
