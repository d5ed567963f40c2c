#include "ineq/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "ineq/errors.hpp"
#include "ineq/indices.hpp"
#include "ineq/quadrature.hpp"

namespace ineq {
namespace {

constexpr QuadratureOptions kW1Quadrature{.abs_tol = 1e-10, .rel_tol = 1e-11,
                                          .max_subdivisions = 50000};

double exact_quantile_route(const Distribution& a, const Distribution& b) {
  const auto xa = a.atom_locations();
  const auto ca = a.atom_cumulative();
  const auto xb = b.atom_locations();
  const auto cb = b.atom_cumulative();
  std::size_t i = 0;
  std::size_t j = 0;
  double t = 0.0;
  double sum = 0.0;
  // Both cumulative sequences end at exactly 1.
  while (i < xa.size() && j < xb.size()) {
    const double next = std::min(ca[i], cb[j]);
    sum += (next - t) * std::abs(xa[i] - xb[j]);
    t = next;
    if (ca[i] == next) ++i;
    if (cb[j] == next) ++j;
  }
  return sum;
}

double exact_cdf_route(const Distribution& a, const Distribution& b) {
  std::vector<double> xs(a.atom_locations().begin(), a.atom_locations().end());
  xs.insert(xs.end(), b.atom_locations().begin(), b.atom_locations().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    sum += (xs[k + 1] - xs[k]) * std::abs(a.cdf(xs[k]) - b.cdf(xs[k]));
  }
  return sum;
}

std::vector<double> merged_probability_partition(const Distribution& a, const Distribution& b) {
  std::vector<double> pts = a.probability_breakpoints();
  const auto more = b.probability_breakpoints();
  pts.insert(pts.end(), more.begin(), more.end());
  for (int i = 1; i < 64; ++i) pts.push_back(i / 64.0);
  for (int k = 7; k <= 40; ++k) pts.push_back(std::ldexp(1.0, -k));
  if (a.has_unbounded_support() || b.has_unbounded_support()) {
    for (int k = 7; k <= 40; ++k) pts.push_back(1.0 - std::ldexp(1.0, -k));
  }
  return make_partition(std::move(pts), 0.0, 1.0);
}

std::vector<double> merged_abscissa_partition(const Distribution& a, const Distribution& b) {
  const double top = std::max(a.truncation_point(), b.truncation_point());
  std::vector<double> pts(a.breakpoints().begin(), a.breakpoints().end());
  pts.insert(pts.end(), b.breakpoints().begin(), b.breakpoints().end());
  for (int i = 1; i < 64; ++i) pts.push_back(top * i / 64.0);
  return make_partition(std::move(pts), 0.0, top);
}

// Points where Q_limit jumps: F is flat right after the probability.
std::vector<double> quantile_jumps(const Distribution& limit) {
  std::vector<double> jumps;
  const double scale = std::max(1.0, limit.mean());
  for (double p : limit.probability_breakpoints()) {
    if (!(p > 0.0 && p < 1.0)) continue;
    const double after = std::min(p + 1e-9, std::nextafter(1.0, 0.0));
    if (limit.quantile(after) - limit.quantile(p) > 1e-6 * scale) jumps.push_back(p);
  }
  return jumps;
}

std::vector<double> weak_ladder(const std::vector<double>& jumps) {
  std::vector<double> ladder;
  for (int j = 1; j <= 6; ++j) {
    const int n = 1 << j;
    for (int k = 1; k < n; k += 2) {
      const double t = static_cast<double>(k) / n;
      const bool near_jump = std::any_of(jumps.begin(), jumps.end(),
                                         [&](double p) { return std::abs(p - t) < 1e-6; });
      if (!near_jump) ladder.push_back(t);
    }
  }
  std::sort(ladder.begin(), ladder.end());
  return ladder;
}

Verdict decide(bool weak, bool second) {
  if (!weak) return Verdict::divergent;
  return second ? Verdict::w1_convergent : Verdict::weak_only;
}

}  // namespace

double W1Routes::residual() const { return std::abs(quantile_route - cdf_route); }

W1Routes w1_routes(const Distribution& a, const Distribution& b) {
  if (!std::isfinite(a.mean()) || !std::isfinite(b.mean())) {
    throw DivergenceError("W1 needs finite means");
  }
  if (a.is_discrete() && b.is_discrete()) {
    return {exact_quantile_route(a, b), exact_cdf_route(a, b), true};
  }
  const auto qr = integrate([&](double t) { return std::abs(a.quantile(t) - b.quantile(t)); },
                            merged_probability_partition(a, b), kW1Quadrature);
  const auto cr = integrate([&](double x) { return std::abs(a.cdf(x) - b.cdf(x)); },
                            merged_abscissa_partition(a, b), kW1Quadrature);
  return {qr.value, cr.value, false};
}

double w1(const Distribution& a, const Distribution& b) { return w1_routes(a, b).value(); }

double ui_tail(std::span<const Distribution> family, double alpha) {
  if (family.empty()) throw ValidationError("u.i. tail needs a nonempty family");
  if (!(alpha > 0.0)) throw DomainError("u.i. threshold must be positive");
  double sup = 0.0;
  for (const auto& d : family) {
    if (!std::isfinite(d.mean())) throw DivergenceError("u.i. tail needs finite means");
    sup = std::max(sup, d.tail_moment(alpha));
  }
  return sup;
}

double lorenz_tail_gap(std::span<const Distribution> family, double x) {
  if (family.empty()) throw ValidationError("Lorenz tail gap needs a nonempty family");
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("Lorenz tail gap needs x in [0,1)");
  double inf = 1.0;
  for (const auto& d : family) inf = std::min(inf, LorenzCurve(d)(x));
  return 1.0 - inf;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::w1_convergent: return "w1_convergent";
    case Verdict::weak_only: return "weak_only";
    case Verdict::divergent: return "divergent";
  }
  return "divergent";
}

ConvergenceReport sequence_diagnostics(std::span<const Distribution> sequence,
                                       const Distribution& limit,
                                       const DiagnosticsOptions& options) {
  if (sequence.empty()) throw ValidationError("sequence must be nonempty");
  if (!options.parameters.empty() && options.parameters.size() != sequence.size()) {
    throw ValidationError("parameter labels must match the sequence length");
  }
  for (const auto& d : sequence) d.require_m();

  ConvergenceReport report;
  report.tolerance = options.tolerance;
  const double m_limit = limit.mean();
  const double scale = m_limit > 0.0 ? m_limit : 1.0;
  report.limit.mean = m_limit;
  std::optional<LorenzCurve> limit_curve;
  if (limit.in_m()) {
    report.limit.gini = gini(limit);
    report.limit.hoover = hoover(limit);
    limit_curve.emplace(limit);
  }

  std::vector<double> alphas = options.alpha_grid;
  if (alphas.empty()) {
    for (int k = 0; k <= 10; ++k) alphas.push_back(scale * std::ldexp(1.0, k));
  }
  // A finite family is always u.i. far enough out, so the threshold is tied
  // to the limit: the first α where the limit's own tail is negligible.
  std::sort(alphas.begin(), alphas.end());
  report.alpha = alphas.back();
  for (double a : alphas) {
    if (limit.tail_moment(a) <= 0.5 * options.tolerance * scale) {
      report.alpha = a;
      break;
    }
  }

  std::vector<double> lorenz_probes = options.probes;
  if (lorenz_probes.empty()) {
    const auto extra = limit.probability_breakpoints();
    lorenz_probes = probe_ladder(extra);
  }
  const auto ladder = weak_ladder(quantile_jumps(limit));
  std::vector<double> limit_q;
  for (double t : ladder) limit_q.push_back(limit.quantile(t));
  std::vector<double> limit_l;
  if (limit_curve) {
    for (double p : lorenz_probes) limit_l.push_back((*limit_curve)(p));
  }

  auto evaluate = [&](std::size_t i) {
    const Distribution& d = sequence[i];
    ConvergenceStep s;
    s.index = static_cast<int>(i);
    s.parameter = options.parameters.empty() ? static_cast<double>(i) : options.parameters[i];
    s.w1_to_limit = w1(d, limit);
    s.mean = d.mean();
    s.gini = gini(d);
    s.hoover = hoover(d);
    if (limit_curve) {
      const LorenzCurve curve(d);
      for (std::size_t k = 0; k < lorenz_probes.size(); ++k) {
        s.lorenz_sup_error =
            std::max(s.lorenz_sup_error, std::abs(curve(lorenz_probes[k]) - limit_l[k]));
      }
    }
    s.ui_tail_at_alpha = d.tail_moment(report.alpha);
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      s.weak_probe_error =
          std::max(s.weak_probe_error, std::abs(d.quantile(ladder[k]) - limit_q[k]) / scale);
    }
    s.cdf_sup_error = kolmogorov_distance(d, limit);
    return s;
  };

  // Steps are independent; evaluate them in parallel and keep index order.
  report.steps.resize(sequence.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < sequence.size(); i += workers) report.steps[i] = evaluate(i);
    }));
  }
  for (auto& j : jobs) j.get();

  const ConvergenceStep& last = report.steps.back();
  const double tol = options.tolerance;
  report.w1_small = last.w1_to_limit <= tol * scale;
  report.means_converge = std::abs(last.mean - m_limit) <= tol * scale;
  report.weak_probes_pass = last.weak_probe_error <= tol;
  const std::size_t half = sequence.size() / 2;
  report.uniformly_integrable =
      ui_tail(sequence.subspan(half), report.alpha) <= tol * scale;

  report.verdict_from_means = decide(report.weak_probes_pass, report.means_converge);
  report.verdict_from_ui = decide(report.weak_probes_pass, report.uniformly_integrable);
  if (report.w1_small) {
    report.verdict = Verdict::w1_convergent;
    report.deciding_diagnostic = "w1_to_limit";
  } else if (report.weak_probes_pass) {
    report.verdict = Verdict::weak_only;
    report.deciding_diagnostic = "weak_probe_error";
  } else {
    report.verdict = Verdict::divergent;
    report.deciding_diagnostic = "weak_probe_error";
  }
  return report;
}

LorenzLimit limit_from_lorenz(const CurveGrid& grid, double alpha) {
  const auto& p = grid.p;
  const auto& v = grid.value;
  if (p.size() != v.size() || p.size() < 2) {
    throw ValidationError("limit curve needs at least 2 matching grid points");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be nonnegative");
  if (p.front() != 0.0 || p.back() != 1.0) throw ValidationError("curve grid must span [0,1]");
  double previous_slope = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const double dp = p[i + 1] - p[i];
    if (!(dp > 0.0)) throw ValidationError("curve grid must be strictly increasing");
    const double slope = (v[i + 1] - v[i]) / dp;
    if (slope < -kCurveTolerance / dp) throw ValidationError("curve must be nondecreasing");
    if (slope < previous_slope - kCurveTolerance / dp) {
      throw ValidationError("curve grid values are not convex");
    }
    previous_slope = std::max(previous_slope, slope);
  }
  const double at_one = v.back();
  const double mean = at_one * alpha;
  if (!(mean > 0.0)) return {Distribution::atom(0.0), 0.0};
  CurveGrid shrunk = grid;
  for (double& x : shrunk.value) x /= at_one;
  shrunk.value.back() = 1.0;
  if (shrunk.p.size() < 3) {
    // reconstruct() needs an interior point; a two-point grid is a line.
    shrunk.p.insert(shrunk.p.begin() + 1, 0.5);
    shrunk.value.insert(shrunk.value.begin() + 1, 0.5 * (shrunk.value[0] + 1.0));
  }
  return {reconstruct(shrunk, mean), mean};
}

}  // namespace ineq
