#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ineq/wasserstein.hpp"

namespace ineq {

enum class Scheme { noise, sampling, quantile, quantile_of_sample, kde };

Scheme scheme_from_string(std::string_view name);
std::string to_string(Scheme scheme);

// A convergence experiment. Schedules are indexed by step; the two-parameter
// schemes pair n[k] with ell[k] (quantile_of_sample) or h[k] (kde), so both
// parameters grow together.
struct ExperimentSpec {
  Scheme scheme = Scheme::sampling;
  std::string source;  // distribution spec text
  std::vector<std::size_t> n;
  std::vector<int> ell;
  std::vector<double> h;
  std::vector<double> eps;  // noise levels; default 2^-k, k = 1..20
  std::uint64_t seed = 1;
  std::string kernel = "gaussian";
  std::size_t noise_sample_size = 10000;
  double tolerance = 0.05;

  // Throws ValidationError naming the offending field.
  static ExperimentSpec from_json(std::string_view text);
};

// Per-step stream seed; depends only on (master, step) so schedules of
// different lengths share their prefixes.
std::uint64_t step_seed(std::uint64_t master, std::uint64_t step);

struct Experiment {
  std::vector<Distribution> sequence;
  Distribution limit;
  std::vector<double> parameters;
};

Experiment build_experiment(const ExperimentSpec& spec);
ConvergenceReport run_experiment(const ExperimentSpec& spec);

// P(X_n = 1) = 1 - 1/n^2, P(X_n = n^2) = 1/n^2 for n = 1..steps; limit δ_1.
Experiment counterexample1(int steps);
// ν_n = ½δ_0 + (½ - 1/n^2)δ_1 + (1/n^2)δ_{n^2} for n = 1..steps; limit ½δ_0 + ½δ_1.
Experiment counterexample2(int steps);

}  // namespace ineq
