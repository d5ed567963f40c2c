#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ineq/distribution.hpp"
#include "ineq/kernel.hpp"

namespace ineq {

struct Provenance {
  enum class Kind { file, synthetic };
  Kind kind = Kind::synthetic;
  std::string path;         // file
  std::uint64_t seed = 0;   // synthetic
  std::string source_spec;  // synthetic
};

struct SampleSet {
  std::vector<double> values;
  Provenance provenance;

  static SampleSet synthetic(const Distribution& source, std::uint64_t seed, std::size_t n);
};

// One nonnegative number per line; blank lines and '#' comments are skipped.
// Errors carry the 1-based line number.
SampleSet read_samples(std::istream& in, const std::string& name = "<stream>");
SampleSet read_sample_file(const std::string& path);

// (1/n) Σ δ_{x_i}, duplicates merged.
Distribution empirical(const SampleSet& s);

// (1/ℓ) Σ_{k=0}^{ℓ-1} δ_{Q(k/ℓ)}. Dominated at first order by d, with
// F_d <= F_approx <= F_d + 1/ℓ.
Distribution quantile_approx(const Distribution& d, int ell);

// quantile_approx(empirical(s), ℓ).
Distribution quantile_of_sample(const SampleSet& s, int ell);

// Cut-in-zero kernel estimate: the law of max(X + hY, 0) with X ~ empirical(s)
// and Y ~ kernel. Its cdf is (1/n) Σ G((t - x_i)/h) for t >= 0.
Distribution kde(const SampleSet& s, const KernelSpec& kernel, double h);

// Σ_i Σ_j |x_i - x_j| / (2n Σ x_i).
double estimate_gini(const SampleSet& s);
// Σ_i |x_i - x̄| / (2 Σ x_i).
double estimate_hoover(const SampleSet& s);
// Lorenz estimate at x with fractional index nx = k + f:
// [f S_{k+1} + (1-f) S_k] / S_n, S_j the sum of the j smallest values.
double estimate_lorenz_at(const SampleSet& s, double x);

}  // namespace ineq
