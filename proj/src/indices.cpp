#include "ineq/indices.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ineq/errors.hpp"
#include "ineq/lorenz.hpp"
#include "ineq/quadrature.hpp"

namespace ineq {
namespace {

constexpr QuadratureOptions kIndexQuadrature{.abs_tol = 1e-12, .rel_tol = 1e-12,
                                             .max_subdivisions = 20000};

// Probability partition for quantile-domain integrals: slope changes and
// jumps of Q, a uniform 1/64 mesh, and dyadic grading towards both ends.
std::vector<double> quantile_partition(const Distribution& d, std::vector<double> extra = {}) {
  std::vector<double> pts = d.probability_breakpoints();
  pts.insert(pts.end(), extra.begin(), extra.end());
  for (int i = 1; i < 64; ++i) pts.push_back(i / 64.0);
  for (int k = 7; k <= 40; ++k) pts.push_back(std::ldexp(1.0, -k));
  if (d.has_unbounded_support()) {
    for (int k = 7; k <= 40; ++k) pts.push_back(1.0 - std::ldexp(1.0, -k));
  }
  return make_partition(std::move(pts), 0.0, 1.0);
}

std::vector<double> survival_partition(const Distribution& d) {
  std::vector<double> pts(d.breakpoints().begin(), d.breakpoints().end());
  const double top = d.truncation_point();
  for (int i = 1; i < 64; ++i) pts.push_back(top * i / 64.0);
  return make_partition(std::move(pts), 0.0, top);
}

double clamp_index(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

double gini_mean_difference(const Distribution& d) {
  d.require_m();
  const double m = d.mean();
  if (d.is_discrete()) {
    // Σ_i Σ_j w_i w_j |x_i - x_j| = 2 Σ_j w_j (x_j W_{<j} - S_{<j}) on sorted atoms.
    const auto x = d.atom_locations();
    const auto w = d.atom_weights();
    double below_mass = 0.0;
    double below_moment = 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      sum += w[j] * (x[j] * below_mass - below_moment);
      below_mass += w[j];
      below_moment += w[j] * x[j];
    }
    return clamp_index(2.0 * sum / (2.0 * m));
  }

  const auto pts = quantile_partition(d);
  const auto nodes = composite_nodes(pts);
  std::vector<double> q(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) q[i] = d.quantile(nodes[i].x);

  constexpr std::size_t kPanel = 15;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const std::size_t pi = k * kPanel;
    // Diagonal panel [a,b]^2: Q is monotone, so the kink along u = v
    // integrates exactly to 2 ∫_a^b Q(u)(2u - a - b) du.
    double diag = 0.0;
    for (std::size_t i = pi; i < pi + kPanel; ++i) {
      diag += nodes[i].weight * q[i] * (2.0 * nodes[i].x - pts[k] - pts[k + 1]);
    }
    total += 2.0 * diag;
    for (std::size_t pj = 0; pj < nodes.size(); pj += kPanel) {
      if (pj == pi) continue;
      double block = 0.0;
      for (std::size_t i = pi; i < pi + kPanel; ++i) {
        double inner = 0.0;
        for (std::size_t j = pj; j < pj + kPanel; ++j) {
          inner += nodes[j].weight * std::abs(q[i] - q[j]);
        }
        block += nodes[i].weight * inner;
      }
      total += block;
    }
  }
  return clamp_index(total / (2.0 * m));
}

double gini_dorfman(const Distribution& d) {
  d.require_m();
  if (d.is_discrete()) {
    const auto x = d.atom_locations();
    const auto w = d.atom_weights();
    double squared = x.front();
    double plain = x.front();
    double survival = 1.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      survival -= w[i];
      const double gap = x[i + 1] - x[i];
      squared += gap * survival * survival;
      plain += gap * survival;
    }
    return clamp_index(1.0 - squared / plain);
  }
  const auto pts = survival_partition(d);
  const auto squared = integrate(
      [&](double x) {
        const double s = 1.0 - d.cdf(x);
        return s * s;
      },
      pts, kIndexQuadrature);
  const auto plain = integrate([&](double x) { return 1.0 - d.cdf(x); }, pts, kIndexQuadrature);
  return clamp_index(1.0 - squared.value / plain.value);
}

double gini_lorenz(const Distribution& d) {
  d.require_m();
  const double m = d.mean();
  if (d.is_discrete()) {
    // L is affine between the cumulative masses; the trapezoid rule is exact.
    const auto x = d.atom_locations();
    const auto w = d.atom_weights();
    double area = 0.0;
    double level = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double next = level + w[i] * x[i] / m;
      area += 0.5 * w[i] * (level + next);
      level = next;
    }
    return clamp_index(1.0 - 2.0 * area);
  }
  const LorenzCurve curve(d);
  const auto area = integrate([&](double p) { return curve(p); }, quantile_partition(d),
                              kIndexQuadrature);
  return clamp_index(1.0 - 2.0 * area.value);
}

double hoover_mean_deviation(const Distribution& d) {
  d.require_m();
  const double m = d.mean();
  if (d.is_discrete()) {
    const auto x = d.atom_locations();
    const auto w = d.atom_weights();
    double dev = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dev += w[i] * std::abs(x[i] - m);
    return clamp_index(dev / (2.0 * m));
  }
  const auto pts = quantile_partition(d, {d.cdf_left(m), d.cdf(m)});
  const auto dev = integrate([&](double u) { return std::abs(d.quantile(u) - m); }, pts,
                             kIndexQuadrature);
  return clamp_index(dev.value / (2.0 * m));
}

double hoover_cdf(const Distribution& d) {
  d.require_m();
  const double fm = d.cdf(d.mean());
  const LorenzCurve curve(d);
  return clamp_index(fm - curve(fm));
}

HooverMax hoover_max_detail(const Distribution& d) {
  d.require_m();
  const LorenzCurve curve(d);
  const double fm = d.cdf(d.mean());
  HooverMax out{clamp_index(fm - curve(fm)), fm, 0.0};
  out.sweep_max = out.value;
  const double lo = std::max(0.0, fm - 0.5);
  const double hi = std::min(1.0, fm + 0.5);
  for (int i = 0; i <= 1024; ++i) {
    const double p = lo + (hi - lo) * i / 1024.0;
    out.sweep_max = std::max(out.sweep_max, p - curve(p));
  }
  return out;
}

double hoover_max(const Distribution& d) { return hoover_max_detail(d).value; }

RobinHoodShares robin_hood_shares(const Distribution& d) {
  d.require_m();
  const double m = d.mean();
  if (d.is_discrete()) {
    RobinHoodShares s{0.0, 0.0};
    const auto x = d.atom_locations();
    const auto w = d.atom_weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > m) s.r_share += w[i] * (x[i] - m);
      if (x[i] < m) s.p_share += w[i] * (m - x[i]);
    }
    return s;
  }
  const double fm = d.cdf(m);
  const double below = d.partial_moment(m);
  // The atom at exactly m, if any, adds m*w - m*w = 0 to P.
  return {std::max(0.0, (m - below) - m * (1.0 - fm)), std::max(0.0, m * fm - below)};
}

double gini(const Distribution& d) {
  return d.is_discrete() ? gini_mean_difference(d) : gini_dorfman(d);
}

double hoover(const Distribution& d) { return hoover_cdf(d); }

IndexReport index_report(const Distribution& d) {
  d.require_m();
  IndexReport r;
  r.mean = d.mean();
  r.exact = d.is_discrete();
  r.tolerance = r.exact ? kExactRouteTolerance : kQuadratureRouteTolerance;
  r.gini_mean_difference = gini_mean_difference(d);
  r.gini_dorfman = gini_dorfman(d);
  r.gini_lorenz = gini_lorenz(d);
  r.hoover_mean_deviation = hoover_mean_deviation(d);
  r.hoover_cdf = hoover_cdf(d);
  r.hoover_max = hoover_max(d);
  const auto shares = robin_hood_shares(d);
  r.r_share = shares.r_share;
  r.p_share = shares.p_share;

  auto spread = [](double a, double b, double c) {
    return std::max({a, b, c}) - std::min({a, b, c});
  };
  r.gini_residual = spread(r.gini_mean_difference, r.gini_dorfman, r.gini_lorenz);
  r.hoover_residual = spread(r.hoover_mean_deviation, r.hoover_cdf, r.hoover_max);
  r.robin_hood_residual = std::max(std::abs(r.r_share - r.p_share),
                                   std::abs(r.r_share / r.mean - r.hoover_cdf));
  r.max_cross_route_residual = std::max({r.gini_residual, r.hoover_residual, r.robin_hood_residual});
  return r;
}

GiniRange gini_range_given_hoover(double h) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("Hoover value must lie in (0,1)");
  return {h, 2.0 * h - h * h, true};
}

Distribution extremal_bimodal(double h, double mean, double alpha) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("Hoover value must lie in (0,1)");
  if (!(mean > 0.0) || !std::isfinite(mean)) throw DomainError("mean must be positive");
  if (!(alpha < 1.0)) throw DomainError("alpha must be below 1");
  if (alpha < h) throw ValidationError("alpha must be at least h");
  const double low = alpha == h ? 0.0 : mean * (1.0 - h / alpha);
  const double high = mean * (1.0 + h / (1.0 - alpha));
  const double x[] = {low, high};
  const double w[] = {alpha, 1.0 - alpha};
  return Distribution::discrete(x, w);
}

Distribution three_group(double h, double mean, double alpha) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("Hoover value must lie in (0,1)");
  if (!(mean > 0.0) || !std::isfinite(mean)) throw DomainError("mean must be positive");
  if (!(alpha < 1.0)) throw DomainError("alpha must be below 1");
  if (alpha < h) throw ValidationError("alpha must be at least h");
  std::vector<double> x{0.0};
  std::vector<double> w{h};
  if (alpha > h) {
    x.push_back(mean);
    w.push_back(alpha - h);
  }
  x.push_back(mean * (1.0 + h / (1.0 - alpha)));
  w.push_back(1.0 - alpha);
  return Distribution::discrete(x, w);
}

}  // namespace ineq
