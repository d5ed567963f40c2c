#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ineq/distribution.hpp"
#include "ineq/lorenz.hpp"

namespace ineq {

struct W1Routes {
  double quantile_route;  // ∫_0^1 |Q_a - Q_b|
  double cdf_route;       // ∫_0^∞ |F_a - F_b|
  bool exact;             // both operands finite-discrete
  double value() const { return quantile_route; }
  double residual() const;
};

W1Routes w1_routes(const Distribution& a, const Distribution& b);
// Quantile-route value.
double w1(const Distribution& a, const Distribution& b);

// sup over the family of ∫ x 1{x > alpha} dμ_i.
double ui_tail(std::span<const Distribution> family, double alpha);

// 1 - inf_i L_i(x).
double lorenz_tail_gap(std::span<const Distribution> family, double x);

enum class Verdict { w1_convergent, weak_only, divergent };
std::string to_string(Verdict v);

struct ConvergenceStep {
  int index = 0;
  double parameter = 0.0;  // n, ℓ, h or ε that produced the step
  double w1_to_limit = 0.0;
  double mean = 0.0;
  double gini = 0.0;
  double hoover = 0.0;
  double lorenz_sup_error = 0.0;
  double ui_tail_at_alpha = 0.0;
  double weak_probe_error = 0.0;
  double cdf_sup_error = 0.0;
};

struct LimitSummary {
  double mean = 0.0;
  std::optional<double> gini;    // absent for δ_0
  std::optional<double> hoover;
};

struct ConvergenceReport {
  std::vector<ConvergenceStep> steps;
  LimitSummary limit;
  Verdict verdict = Verdict::divergent;
  std::string deciding_diagnostic;

  // The individual semi-decisions at the last step.
  bool w1_small = false;
  bool means_converge = false;
  bool weak_probes_pass = false;
  bool uniformly_integrable = false;
  Verdict verdict_from_means = Verdict::divergent;
  Verdict verdict_from_ui = Verdict::divergent;
  double tolerance = 0.0;
  double alpha = 0.0;

  // Weak + means and weak + u.i. agree with the W1 verdict.
  bool scheffe_consistent() const {
    return verdict == verdict_from_means && verdict_from_means == verdict_from_ui;
  }
};

struct DiagnosticsOptions {
  // Probability ladder for the sup-Lorenz error; empty means probe_ladder().
  std::vector<double> probes;
  // Candidate u.i. thresholds; empty means m_∞ * 2^k, k = 0..10. The first
  // one where the limit's tail moment is within half the tolerance is used.
  std::vector<double> alpha_grid;
  // Relative tolerance of the last-step semi-decisions.
  double tolerance = 0.05;
  // Per-step parameter labels (same length as the sequence, or empty).
  std::vector<double> parameters;
};

// Per-step distance, index and tail diagnostics along `sequence` towards
// `limit`, and the verdict read off the last step. Weak convergence is only
// semi-decided: quantile probes on a dyadic ladder (minus the jump points of
// Q_limit) must be within tolerance at the last step.
ConvergenceReport sequence_diagnostics(std::span<const Distribution> sequence,
                                       const Distribution& limit,
                                       const DiagnosticsOptions& options = {});

struct LorenzLimit {
  Distribution distribution;
  double mean;
};

// Limit of measures whose Lorenz curves converge pointwise on [0,1) to the
// grid function and whose means converge to alpha: mean ℓ(1-)·alpha, and the
// curve ℓ/ℓ(1-) reconstructed at that mean; δ_0 when ℓ(1-)·alpha = 0. The
// last grid value is read as ℓ(1-).
LorenzLimit limit_from_lorenz(const CurveGrid& grid, double alpha);

}  // namespace ineq
