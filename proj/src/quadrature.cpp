#include "ineq/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

namespace ineq {
namespace {

// Kronrod abscissae on [0,1] side of the symmetric 15-point rule; odd indices
// are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// Nodes of very short panels can round onto an endpoint, where the integrand
// may be undefined (a quantile at p = 1). Keep them strictly inside.
double interior(double x, double a, double b) {
  const double lo = std::nextafter(a, b);
  const double hi = std::nextafter(b, a);
  // A panel one ulp wide has no interior; its left end is the safe side.
  return lo <= hi ? std::clamp(x, lo, hi) : a;
}

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                    int& evaluations) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(interior(center, a, b));
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(interior(center - dx, a, b)) + f(interior(center + dx, a, b));
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  evaluations += 15;
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> points,
                           const QuadratureOptions& options) {
  QuadratureResult result;
  if (points.size() < 2) {
    result.converged = true;
    return result;
  }
  std::priority_queue<Panel> panels;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    Panel p = gauss_kronrod(f, points[i], points[i + 1], result.evaluations);
    value += p.value;
    error += p.error;
    panels.push(p);
  }
  int subdivisions = 0;
  auto target = [&] {
    return std::max(options.abs_tol, options.rel_tol * std::abs(value));
  };
  while (error > target() && subdivisions < options.max_subdivisions &&
         !panels.empty()) {
    Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    panels.pop();
    Panel left = gauss_kronrod(f, worst.a, mid, result.evaluations);
    Panel right = gauss_kronrod(f, mid, worst.b, result.evaluations);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  result.value = value;
  result.error = error;
  result.converged = error <= target();
  return result;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& options) {
  const std::array<double, 2> pts{a, b};
  return integrate(f, pts, options);
}

std::vector<QuadratureNode> composite_nodes(std::span<const double> points) {
  std::vector<QuadratureNode> nodes;
  if (points.size() < 2) return nodes;
  nodes.reserve(15 * (points.size() - 1));
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = points[i];
    const double b = points[i + 1];
    if (!(b > a)) continue;
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int j = 0; j < 7; ++j) {
      nodes.push_back({interior(center - half * kXgk[j], a, b), half * kWgk[j]});
    }
    nodes.push_back({interior(center, a, b), half * kWgk[7]});
    for (int j = 6; j >= 0; --j) {
      nodes.push_back({interior(center + half * kXgk[j], a, b), half * kWgk[j]});
    }
  }
  return nodes;
}

std::vector<double> make_partition(std::vector<double> points, double lo,
                                   double hi) {
  points.push_back(lo);
  points.push_back(hi);
  std::erase_if(points, [&](double x) {
    return !(x >= lo && x <= hi) || !std::isfinite(x);
  });
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

}  // namespace ineq
