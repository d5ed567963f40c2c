#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "ineq/distribution.hpp"

namespace ineq {

// Absolute tolerance for comparing Lorenz values.
inline constexpr double kCurveTolerance = 1e-10;

// L(p) = ∫_0^p Q / m: convex, nondecreasing, L(0) = 0, L(1) = 1, L(p) <= p.
class LorenzCurve {
 public:
  // Throws OutsideMError when the source has zero mean.
  explicit LorenzCurve(Distribution source);

  double operator()(double p) const;
  // Q(p) / m for p in (0, 1].
  double left_derivative(double p) const;

  double source_mean() const { return source_.mean(); }
  const Distribution& source() const { return source_; }
  // Exact piecewise-affine curve (finite-discrete source) vs. closed-form
  // partial moments with a bisected quantile.
  bool exact() const { return source_.is_discrete(); }
  // Probabilities where the curve changes slope.
  std::vector<double> breakpoints() const { return source_.probability_breakpoints(); }

 private:
  Distribution source_;
};

LorenzCurve lorenz(const Distribution& d);

// Λ(p) = ∫_[0,Q(p)] u dμ(u) / m for p < 1, and Λ(1) = 1.
double pseudo_lorenz(const Distribution& d, double p);

struct KendallPoint {
  double x;
  double y;
  friend bool operator==(const KendallPoint&, const KendallPoint&) = default;
};

// Points (F(t), ∫_[0,t] u dμ / m), in t order, with consecutive duplicates
// dropped.
std::vector<KendallPoint> kendall_points(const Distribution& d,
                                         std::span<const double> t_grid);

// L_d1 <= L_d2 + 1e-10 on both breakpoint sets and a uniform grid.
bool lorenz_dominates(const Distribution& d1, const Distribution& d2, int grid);

// A convex function sampled at increasing abscissae, first 0 and last 1.
struct CurveGrid {
  std::vector<double> p;
  std::vector<double> value;
};

CurveGrid sample_curve(const LorenzCurve& curve, int resolution);

// The measure whose quantile is target_mean times the left derivative of the
// curve, taken as left divided differences on the grid (a step quantile).
// Throws ValidationError on a non-convex grid or endpoints other than 0 and 1.
Distribution reconstruct(const CurveGrid& curve, double target_mean);

// Two-column TSV "p\tL" with resolution + 1 rows.
void write_curve_tsv(std::ostream& out, const LorenzCurve& curve, int resolution);

// The standard probe ladder: dyadic points k/2^j (j <= 10), 64 uniform
// points, and `extra`.
std::vector<double> probe_ladder(std::span<const double> extra = {});

}  // namespace ineq
