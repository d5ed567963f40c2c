#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ineq/kernel.hpp"

namespace ineq {

// Validation tolerance on weights and probabilities.
inline constexpr double kWeightTolerance = 1e-12;
// Survival mass below which an unbounded tail is truncated for quadrature.
inline constexpr double kTailMass = 1e-12;

struct Atom {
  double location;
};

struct UniformDensity {
  double a;
  double b;
};

struct Lognormal {
  double log_mean;
  double log_sd;
};

struct Gamma {
  double shape;
  double scale;
};

struct Exponential {
  double rate;
};

enum class TableMode {
  // Q(p) = values[i] on (grid[i], grid[i+1]], with grid[k] = 1: a discrete measure.
  step,
  // Q interpolates linearly between (grid[i], values[i]); grid must end at 1.
  linear,
};

struct QuantileTable {
  std::vector<double> grid;
  std::vector<double> values;
  TableMode mode = TableMode::step;
};

// Law of max(X + h*Y, 0) where X is uniform on `centers` and Y has density
// `kernel`: the cut-in-zero kernel density estimate.
struct KernelSmoothed {
  std::vector<double> centers;
  KernelSpec kernel;
  double bandwidth;
};

using Component = std::variant<Atom, UniformDensity, Lognormal, Gamma,
                               Exponential, QuantileTable, KernelSmoothed>;

struct WeightedComponent {
  double weight;
  Component component;
};

// A probability measure on [0, ∞) given as a finite mixture of components.
//
// Distributions are immutable values with shared internal state; copying is
// cheap and concurrent reads are safe. Everything that needs a mean takes it
// from the cached value computed at construction.
class Distribution {
 public:
  explicit Distribution(std::vector<WeightedComponent> components);

  static Distribution atom(double location);
  static Distribution uniform(double a, double b);
  static Distribution lognormal(double log_mean, double log_sd);
  static Distribution gamma(double shape, double scale);
  static Distribution exponential(double rate);
  static Distribution from_table(QuantileTable table);
  // Weighted atoms; weights must sum to one.
  static Distribution discrete(std::span<const double> locations,
                               std::span<const double> weights);

  std::span<const WeightedComponent> components() const;

  // μ([0, x]). Throws DomainError for negative or NaN x.
  double cdf(double x) const;
  // μ([0, x)).
  double cdf_left(double x) const;
  // min{q ≥ 0 : F(q) ≥ p} for p in [0, 1). Throws DomainError otherwise.
  double quantile(double p) const;
  // ∫_0^p Q(t) dt for p in [0, 1].
  double integral_quantile(double p) const;
  // ∫_[0,q] x dμ(x).
  double partial_moment(double q) const;
  // ∫ x 1{x > alpha} dμ(x).
  double tail_moment(double alpha) const;

  double mean() const;
  double mean_via_survival() const;
  double mean_via_quantile() const;

  // Finite nonzero mean. Index computations require this.
  bool in_m() const;
  void require_m() const;

  // Only atoms: every exact path applies.
  bool is_discrete() const;
  std::span<const double> atom_locations() const;
  std::span<const double> atom_weights() const;
  // Mass of atoms at or below each location; ends at exactly 1 when discrete.
  std::span<const double> atom_cumulative() const;

  // Abscissae where F jumps or changes analytic form, sorted, always with 0.
  std::span<const double> breakpoints() const;
  // Probabilities F(b-) and F(b) at every breakpoint plus 0 and 1, and a
  // ladder 1 - 2^-k towards 1 when the support is unbounded.
  std::vector<double> probability_breakpoints() const;
  double support_max() const;
  // Point beyond which every component has survival mass below kTailMass.
  double truncation_point() const;
  bool has_unbounded_support() const;

  std::string describe() const;

  struct Impl;

 private:
  explicit Distribution(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

Distribution mixture(std::span<const std::pair<double, Distribution>> parts);
Distribution mixture(std::initializer_list<std::pair<double, Distribution>> parts);

// Pushforward under x -> alpha*x.
Distribution rescale(const Distribution& d, double alpha);

// First-order stochastic dominance of `upper` over `lower`, checked on the
// CDF side (F_upper <= F_lower) and on the quantile side (Q_upper >= Q_lower).
// The probes of each side are fed to the other so the two answers coincide;
// a disagreement throws std::logic_error.
bool fsd_dominates(const Distribution& upper, const Distribution& lower,
                   int grid);

// Inverse-transform sample: Q(U_i) for U_i uniform on [0,1) from a
// 64-bit Mersenne twister seeded with `seed`.
std::vector<double> sample(const Distribution& d, std::uint64_t seed,
                           std::size_t n);

// sup_x |F_a(x) - F_b(x)| over both breakpoint sets (both one-sided limits)
// and `grid` uniform abscissae.
double kolmogorov_distance(const Distribution& a, const Distribution& b,
                           int grid = 1024);

}  // namespace ineq
