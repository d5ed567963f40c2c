#pragma once

#include "ineq/distribution.hpp"

namespace ineq {

// Cross-route agreement expected of exact (finite-discrete) and quadrature paths.
inline constexpr double kExactRouteTolerance = 1e-8;
inline constexpr double kQuadratureRouteTolerance = 1e-4;

// E|X - X'| / 2m. Exact pair sum for discrete inputs; otherwise a
// tensor-product Gauss-Kronrod rule over the quantile square.
double gini_mean_difference(const Distribution& d);
// 1 - ∫(1-F)^2 / ∫(1-F).
double gini_dorfman(const Distribution& d);
// 1 - 2 ∫_0^1 L.
double gini_lorenz(const Distribution& d);

// E|X - m| / 2m.
double hoover_mean_deviation(const Distribution& d);
// F(m) - L(F(m)).
double hoover_cdf(const Distribution& d);

struct HooverMax {
  double value;     // F(m) - L(F(m))
  double argmax;    // F(m)
  double sweep_max; // max of p - L(p) over the verification sweep
};
// max_p (p - L(p)), evaluated at F(m) and verified by a 1024-point sweep.
HooverMax hoover_max_detail(const Distribution& d);
double hoover_max(const Distribution& d);

struct RobinHoodShares {
  double r_share;  // ∫_(m,∞) (x - m) dμ
  double p_share;  // ∫_[0,m) (m - x) dμ
};
RobinHoodShares robin_hood_shares(const Distribution& d);

// Cheapest accurate route: exact pair sum for discrete inputs, Dorfman otherwise.
double gini(const Distribution& d);
// F(m) - L(F(m)).
double hoover(const Distribution& d);

struct IndexReport {
  double mean = 0.0;
  bool exact = false;
  double gini_mean_difference = 0.0;
  double gini_dorfman = 0.0;
  double gini_lorenz = 0.0;
  double hoover_mean_deviation = 0.0;
  double hoover_cdf = 0.0;
  double hoover_max = 0.0;
  double r_share = 0.0;
  double p_share = 0.0;
  double gini_residual = 0.0;
  double hoover_residual = 0.0;
  double robin_hood_residual = 0.0;
  double max_cross_route_residual = 0.0;
  double tolerance = 0.0;

  bool within_tolerance() const { return max_cross_route_residual <= tolerance; }
};

IndexReport index_report(const Distribution& d);

struct GiniRange {
  double low;
  double high;
  bool high_exclusive = true;
};
// {G(μ) : H(μ) = h} = [h, 2h - h^2).
GiniRange gini_range_given_hoover(double h);

// α δ_{m(1-h/α)} + (1-α) δ_{m(1+h/(1-α))}: G = H = h, mean m.
Distribution extremal_bimodal(double h, double mean, double alpha);

// Three groups whose Lorenz curve joins O, (h, 0), (α, α-h) and (1, 1):
// mass h at 0, mass α-h at m, mass 1-α at m(1 + h/(1-α)). H = h and
// G = h + αh - h^2.
Distribution three_group(double h, double mean, double alpha);

}  // namespace ineq
