#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ineq {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_subdivisions = 20000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Globally adaptive 15-point Gauss-Kronrod integration over [points.front(),
// points.back()]. Every interior point is a forced split, which is how atoms
// and kinks are kept away from the interior of a panel.
QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> points,
                           const QuadratureOptions& options = {});

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& options = {});

struct QuadratureNode {
  double x;
  double weight;
};

// Fixed composite rule: 15 Kronrod nodes on every panel of the partition.
std::vector<QuadratureNode> composite_nodes(std::span<const double> points);

// Sorted, deduplicated copy of `points` restricted to [lo, hi], with lo and hi
// included.
std::vector<double> make_partition(std::vector<double> points, double lo,
                                   double hi);

}  // namespace ineq
