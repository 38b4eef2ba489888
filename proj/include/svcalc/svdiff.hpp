#pragma once

// One-sided path derivatives, set-valued (adherence) differentials, Fomin
// directional derivatives of measures, and the extrapolation/clustering
// machinery behind them. Non-convergence is reported through flags, never
// exceptions: exhibiting a non-differentiable functional is a valid result.

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "svcalc/measure.hpp"
#include "svcalc/setrep.hpp"

namespace svcalc {

struct DiffSchedule {
  std::vector<double> steps;   // positive, strictly decreasing
  double cluster_tol = 1e-3;   // relative tolerance for clustering
  double converge_tol = 1e-6;  // relative tolerance on the extrapolant

  // h0, h0*ratio, h0*ratio^2, ...
  static DiffSchedule geometric(double h0 = 0.1, int levels = 6, double ratio = 0.5);
  // 1/n0, 1/(n0+1), ..., 1/n1
  static DiffSchedule harmonic(int n0 = 4, int n1 = 64);

  void validate() const;
};

struct ExtrapolationTable {
  // columns[j][i] extrapolates values i..i+j to step zero; columns[0] is the input
  std::vector<std::vector<double>> columns;
  double estimate = 0.0;
  double err_estimate = 0.0;
};

// Polynomial extrapolation of (step^order, value) pairs to step zero
// (Neville). The reported estimate is the diagonal entry with the smallest
// consecutive correction, which is also the error estimate.
ExtrapolationTable richardson(std::span<const double> values, std::span<const double> steps,
                              int order = 1);

template <class X>
struct Path {
  std::function<X(double)> at;
  X basepoint;
  std::string note;
};

template <class X>
struct PathFamily {
  std::vector<Path<X>> paths;
  std::string label;
};

struct PathDiffResult {
  double estimate = 0.0;
  double err_estimate = 0.0;
  bool converged = true;
  std::vector<double> steps;
  std::vector<double> quotients;
  ExtrapolationTable table;
};

// One-sided derivative of t |-> phi_along(t) at t = 0+.
PathDiffResult path_diff_values(const std::function<double(double)>& phi_along,
                                const DiffSchedule& sched = DiffSchedule::geometric());

template <class X>
PathDiffResult path_diff(const std::function<double(const X&)>& phi, const Path<X>& c,
                         const DiffSchedule& sched = DiffSchedule::geometric()) {
  if (!(c.at(0.0) == c.basepoint))
    throw std::invalid_argument("path_diff: path does not start at its declared basepoint");
  return path_diff_values([&](double t) { return phi(c.at(t)); }, sched);
}

struct Cluster {
  double value = 0.0;
  double radius = 0.0;
  int count = 0;
};

struct PathAdherence {
  std::vector<double> sequence;  // difference quotients along the schedule
  std::vector<Cluster> clusters;
  bool converged = false;
  bool divergent = false;
  double limit_estimate = 0.0;
};

struct AdherenceResult {
  std::vector<PathAdherence> per_path;
  std::vector<Cluster> clusters;  // union across the family
};

AdherenceResult adherence_derivative_values(
    const std::vector<std::function<double(double)>>& phis_along,
    const DiffSchedule& sched = DiffSchedule::harmonic());

template <class X>
AdherenceResult adherence_derivative(const std::function<double(const X&)>& phi,
                                     const PathFamily<X>& fam,
                                     const DiffSchedule& sched = DiffSchedule::harmonic()) {
  if (fam.paths.empty()) throw std::invalid_argument("adherence_derivative: empty path family");
  for (const auto& p : fam.paths)
    if (!(p.basepoint == fam.paths.front().basepoint))
      throw std::invalid_argument("adherence_derivative: paths have different basepoints");
  std::vector<std::function<double(double)>> g;
  g.reserve(fam.paths.size());
  for (const auto& p : fam.paths)
    g.push_back([&phi, &p](double t) { return phi(p.at(t)); });
  return adherence_derivative_values(g, sched);
}

struct FominResult {
  double estimate = 0.0;
  double err_estimate = 0.0;
  double antisymmetry_residual = 0.0;
  bool converged = true;
  std::vector<double> steps;
  std::vector<double> quotients;  // central differences
  ExtrapolationTable table;
};

// Two-sided (central) derivative of t |-> mu(A + t v).
FominResult fomin_derivative(const MeasureModel& m, const RegionSet& a, std::span<const double> v,
                             const DiffSchedule& sched = DiffSchedule::geometric(0.125, 6));

struct DirectionalSetPath {
  RegionSet base;
  std::vector<double> direction;
  std::function<double(double)> profile;

  RegionSet at(double t) const { return translate(base, direction, profile(t)); }
  Path<RegionSet> as_path() const {
    auto self = *this;
    return Path<RegionSet>{[self](double t) { return self.at(t); }, base, "A + f(t) v"};
  }
};

DirectionalSetPath directional_path(RegionSet a, std::vector<double> v,
                                    std::function<double(double)> profile);

}  // namespace svcalc
