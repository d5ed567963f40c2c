#include "ineq/lorenz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "ineq/errors.hpp"
#include "ineq/quadrature.hpp"

namespace ineq {

LorenzCurve::LorenzCurve(Distribution source) : source_(std::move(source)) {
  source_.require_m();
}

double LorenzCurve::operator()(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("Lorenz argument must lie in [0,1]");
  if (p == 1.0) return 1.0;
  return std::clamp(source_.integral_quantile(p) / source_.mean(), 0.0, p);
}

double LorenzCurve::left_derivative(double p) const {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("left derivative needs p in (0,1]");
  if (p == 1.0) {
    // Q(1-) is the essential supremum.
    return source_.support_max() / source_.mean();
  }
  return source_.quantile(p) / source_.mean();
}

LorenzCurve lorenz(const Distribution& d) { return LorenzCurve(d); }

double pseudo_lorenz(const Distribution& d, double p) {
  d.require_m();
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("pseudo-Lorenz argument must lie in [0,1]");
  if (p == 1.0) return 1.0;
  // The atom at Q(p), if any, is included: the integral runs over [0, Q(p)].
  return std::clamp(d.partial_moment(d.quantile(p)) / d.mean(), 0.0, 1.0);
}

std::vector<KendallPoint> kendall_points(const Distribution& d, std::span<const double> t_grid) {
  d.require_m();
  std::vector<double> ts(t_grid.begin(), t_grid.end());
  std::sort(ts.begin(), ts.end());
  std::vector<KendallPoint> out;
  for (double t : ts) {
    if (!(t >= 0.0)) throw DomainError("Kendall parameter must be nonnegative");
    KendallPoint k{d.cdf(t), std::min(1.0, d.partial_moment(t) / d.mean())};
    if (out.empty() || !(out.back() == k)) out.push_back(k);
  }
  return out;
}

std::vector<double> probe_ladder(std::span<const double> extra) {
  std::vector<double> probes(extra.begin(), extra.end());
  for (int j = 1; j <= 10; ++j) {
    const int n = 1 << j;
    for (int k = 1; k < n; k += 2) probes.push_back(static_cast<double>(k) / n);
  }
  for (int i = 0; i <= 64; ++i) probes.push_back(static_cast<double>(i) / 64.0);
  return make_partition(std::move(probes), 0.0, 1.0);
}

bool lorenz_dominates(const Distribution& d1, const Distribution& d2, int grid) {
  if (grid < 2) throw DomainError("domination grid must have at least 2 points");
  const LorenzCurve l1(d1);
  const LorenzCurve l2(d2);
  std::vector<double> probes = l1.breakpoints();
  const auto more = l2.breakpoints();
  probes.insert(probes.end(), more.begin(), more.end());
  for (int i = 0; i <= grid; ++i) probes.push_back(static_cast<double>(i) / grid);
  probes = make_partition(std::move(probes), 0.0, 1.0);
  return std::all_of(probes.begin(), probes.end(),
                     [&](double p) { return l1(p) <= l2(p) + kCurveTolerance; });
}

CurveGrid sample_curve(const LorenzCurve& curve, int resolution) {
  if (resolution < 2) throw DomainError("curve resolution must be at least 2");
  CurveGrid g;
  g.p.reserve(static_cast<std::size_t>(resolution) + 1);
  g.value.reserve(static_cast<std::size_t>(resolution) + 1);
  for (int i = 0; i <= resolution; ++i) {
    const double p = static_cast<double>(i) / resolution;
    g.p.push_back(p);
    g.value.push_back(curve(p));
  }
  return g;
}

Distribution reconstruct(const CurveGrid& curve, double target_mean) {
  const auto& p = curve.p;
  const auto& v = curve.value;
  if (p.size() != v.size() || p.size() < 3) {
    throw ValidationError("reconstruction needs at least 3 matching grid points");
  }
  if (!(target_mean > 0.0) || !std::isfinite(target_mean)) {
    throw DomainError("target mean must be positive");
  }
  if (p.front() != 0.0 || p.back() != 1.0) throw ValidationError("curve grid must span [0,1]");
  if (std::abs(v.front()) > kCurveTolerance) throw ValidationError("curve must vanish at 0");
  if (std::abs(v.back() - 1.0) > kCurveTolerance) throw ValidationError("curve must equal 1 at 1");

  QuantileTable table;
  table.mode = TableMode::step;
  double previous_slope = -1.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double dp = p[i + 1] - p[i];
    if (!(dp > 0.0)) throw ValidationError("curve grid must be strictly increasing");
    double slope = (v[i + 1] - v[i]) / dp;
    if (slope < -kCurveTolerance / dp) throw ValidationError("curve must be nondecreasing");
    slope = std::max(slope, 0.0);
    if (slope < previous_slope - kCurveTolerance / dp) {
      throw ValidationError("curve grid values are not convex");
    }
    // Rounding noise must not break the monotone table.
    slope = std::max(slope, previous_slope);
    previous_slope = slope;
    table.grid.push_back(p[i]);
    table.values.push_back(target_mean * slope);
  }
  return Distribution::from_table(std::move(table));
}

void write_curve_tsv(std::ostream& out, const LorenzCurve& curve, int resolution) {
  const CurveGrid g = sample_curve(curve, resolution);
  out << "p\tL\n";
  char buf[64];
  for (std::size_t i = 0; i < g.p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g\t%.12g\n", g.p[i], g.value[i]);
    out << buf;
  }
}

}  // namespace ineq
