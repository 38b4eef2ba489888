#include "svcalc/svdiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svcalc {

DiffSchedule DiffSchedule::geometric(double h0, int levels, double ratio) {
  if (!(h0 > 0.0) || levels < 2 || !(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("geometric schedule: need h0 > 0, levels >= 2, 0 < ratio < 1");
  DiffSchedule s;
  double h = h0;
  for (int k = 0; k < levels; ++k, h *= ratio) s.steps.push_back(h);
  return s;
}

DiffSchedule DiffSchedule::harmonic(int n0, int n1) {
  if (n0 < 1 || n1 <= n0) throw std::invalid_argument("harmonic schedule: need 1 <= n0 < n1");
  DiffSchedule s;
  for (int n = n0; n <= n1; ++n) s.steps.push_back(1.0 / static_cast<double>(n));
  return s;
}

void DiffSchedule::validate() const {
  if (steps.size() < 2) throw std::invalid_argument("schedule: need at least two steps");
  for (size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0)) throw std::invalid_argument("schedule: steps must be positive");
    if (i && !(steps[i] < steps[i - 1]))
      throw std::invalid_argument("schedule: steps must decrease");
  }
  if (!(cluster_tol > 0.0)) throw std::invalid_argument("schedule: cluster_tol must be positive");
}

ExtrapolationTable richardson(std::span<const double> values, std::span<const double> steps,
                              int order) {
  if (values.size() != steps.size()) throw std::invalid_argument("richardson: size mismatch");
  if (values.size() < 2) throw std::invalid_argument("richardson: need at least two values");
  const size_t n = values.size();
  std::vector<double> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = std::pow(steps[i], order);

  ExtrapolationTable t;
  t.columns.push_back(std::vector<double>(values.begin(), values.end()));
  for (size_t j = 1; j < n; ++j) {
    const auto& prev = t.columns[j - 1];
    std::vector<double> col(n - j);
    for (size_t i = 0; i + j < n; ++i)
      col[i] = (x[i] * prev[i + 1] - x[i + j] * prev[i]) / (x[i] - x[i + j]);
    t.columns.push_back(std::move(col));
  }

  // pick the diagonal entry with the smallest correction
  t.estimate = t.columns[1][0];
  t.err_estimate = std::fabs(t.columns[1][0] - t.columns[0][0]);
  for (size_t j = 2; j < n; ++j) {
    const double d = std::fabs(t.columns[j][0] - t.columns[j - 1][0]);
    if (d <= t.err_estimate) {
      t.err_estimate = d;
      t.estimate = t.columns[j][0];
    }
  }
  return t;
}

PathDiffResult path_diff_values(const std::function<double(double)>& phi_along,
                                const DiffSchedule& sched) {
  sched.validate();
  PathDiffResult r;
  r.steps = sched.steps;
  const double base = phi_along(0.0);
  if (!std::isfinite(base)) throw std::invalid_argument("path_diff: functional undefined at 0");
  for (double t : sched.steps) {
    const double v = phi_along(t);
    if (!std::isfinite(v))
      throw std::invalid_argument("path_diff: functional undefined along the path");
    r.quotients.push_back((v - base) / t);
  }
  r.table = richardson(r.quotients, r.steps, 1);
  r.estimate = r.table.estimate;
  r.err_estimate = r.table.err_estimate;
  r.converged =
      r.err_estimate <= sched.converge_tol * std::max(1.0, std::fabs(r.estimate));
  return r;
}

namespace {

// Cluster a sorted batch by single linkage: split where the gap between
// neighbours exceeds the (relative) tolerance.
std::vector<Cluster> link_clusters(std::vector<double> vals, double rel_tol) {
  std::sort(vals.begin(), vals.end());
  double scale = 1.0;
  for (double v : vals) scale = std::max(scale, std::fabs(v));
  const double gap = rel_tol * scale;
  std::vector<Cluster> out;
  size_t start = 0;
  for (size_t i = 1; i <= vals.size(); ++i) {
    if (i == vals.size() || vals[i] - vals[i - 1] > gap) {
      Cluster c;
      c.value = 0.5 * (vals[start] + vals[i - 1]);
      c.radius = 0.5 * (vals[i - 1] - vals[start]);
      c.count = static_cast<int>(i - start);
      out.push_back(c);
      start = i;
    }
  }
  return out;
}

}  // namespace

AdherenceResult adherence_derivative_values(
    const std::vector<std::function<double(double)>>& phis_along, const DiffSchedule& sched) {
  sched.validate();
  if (phis_along.empty()) throw std::invalid_argument("adherence_derivative: no paths");
  AdherenceResult res;

  for (const auto& g : phis_along) {
    PathAdherence pa;
    const double base = g(0.0);
    for (double t : sched.steps) pa.sequence.push_back((g(t) - base) / t);

    const size_t n = pa.sequence.size();
    bool finite = true;
    for (double s : pa.sequence)
      if (!std::isfinite(s)) finite = false;

    if (finite) {
      // extrapolate the tail to step zero; a stable extrapolant means the
      // sequence converges and contributes a single adherence point
      const size_t m = std::min<size_t>(8, n);
      std::vector<double> tv(sched.steps.end() - static_cast<long>(m), sched.steps.end());
      std::vector<double> sv(pa.sequence.end() - static_cast<long>(m), pa.sequence.end());
      ExtrapolationTable t = richardson(sv, tv, 1);
      const double scale = std::max(1.0, std::fabs(t.estimate));
      if (t.err_estimate <= 0.1 * sched.cluster_tol * scale) {
        pa.converged = true;
        pa.limit_estimate = t.estimate;
        pa.clusters = {Cluster{t.estimate, t.err_estimate, static_cast<int>(n)}};
      }
    }
    if (!pa.converged) {
      // monotone unbounded growth across the tail reads as divergence
      const size_t w = std::min(n, std::max<size_t>(8, n / 4));
      bool increasing = finite;
      for (size_t i = n - w + 1; increasing && i < n; ++i)
        if (std::fabs(pa.sequence[i]) <= std::fabs(pa.sequence[i - 1])) increasing = false;
      pa.divergent = !finite ||
                     (increasing && std::fabs(pa.sequence.back()) >=
                                        2.0 * std::fabs(pa.sequence.front()) + 1.0);
      if (!pa.divergent) {
        // oscillating: report the cluster points of the tail window
        const size_t tail = std::min(n, std::max<size_t>(8, n / 2));
        std::vector<double> window(pa.sequence.end() - static_cast<long>(tail),
                                   pa.sequence.end());
        pa.clusters = link_clusters(std::move(window), sched.cluster_tol);
      }
    }
    res.per_path.push_back(std::move(pa));
  }

  // union across the family: merge representatives that fall within the
  // cluster tolerance of each other
  std::vector<Cluster> pool;
  for (const auto& pa : res.per_path)
    pool.insert(pool.end(), pa.clusters.begin(), pa.clusters.end());
  std::sort(pool.begin(), pool.end(), [](const Cluster& a, const Cluster& b) { return a.value < b.value; });
  double scale = 1.0;
  for (const auto& c : pool) scale = std::max(scale, std::fabs(c.value));
  const double gap = sched.cluster_tol * scale;
  for (size_t i = 0; i < pool.size();) {
    size_t j = i;
    while (j + 1 < pool.size() && pool[j + 1].value - pool[j].value <= gap) ++j;
    Cluster merged;
    merged.value = 0.5 * (pool[i].value + pool[j].value);
    merged.radius = 0.5 * (pool[j].value - pool[i].value);
    merged.count = 0;
    for (size_t k = i; k <= j; ++k) {
      merged.radius = std::max(merged.radius, pool[k].radius);
      merged.count += pool[k].count;
    }
    res.clusters.push_back(merged);
    i = j + 1;
  }
  return res;
}

FominResult fomin_derivative(const MeasureModel& m, const RegionSet& a, std::span<const double> v,
                             const DiffSchedule& sched) {
  sched.validate();
  auto central = [&](std::span<const double> dir) {
    std::vector<double> q;
    q.reserve(sched.steps.size());
    for (double t : sched.steps) {
      const double plus = mu(m, translate(a, dir, t));
      const double minus = mu(m, translate(a, dir, -t));
      q.push_back((plus - minus) / (2.0 * t));
    }
    return q;
  };

  FominResult r;
  r.steps = sched.steps;
  r.quotients = central(v);
  r.table = richardson(r.quotients, r.steps, 2);
  const ExtrapolationTable& t = r.table;
  r.estimate = t.estimate;
  r.err_estimate = t.err_estimate;
  r.converged = r.err_estimate <= sched.converge_tol * std::max(1.0, std::fabs(r.estimate));

  std::vector<double> neg(v.begin(), v.end());
  for (double& x : neg) x = -x;
  ExtrapolationTable t2 = richardson(central(neg), r.steps, 2);
  r.antisymmetry_residual = std::fabs(r.estimate + t2.estimate);
  return r;
}

DirectionalSetPath directional_path(RegionSet a, std::vector<double> v,
                                    std::function<double(double)> profile) {
  if (static_cast<int>(v.size()) != a.dim())
    throw std::invalid_argument("directional_path: direction dimension mismatch");
  if (!profile) throw std::invalid_argument("directional_path: missing profile");
  return DirectionalSetPath{std::move(a), std::move(v), std::move(profile)};
}

}  // namespace svcalc
