#include "ineq/experiment.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include <json.hpp>

#include "ineq/errors.hpp"
#include "ineq/estimators.hpp"
#include "ineq/spec_parser.hpp"

namespace ineq {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

template <typename T>
void require_length(const std::vector<T>& v, std::size_t expected, const char* field) {
  if (v.size() != expected) {
    throw ValidationError(std::string("schedule.") + field + " must have " +
                          std::to_string(expected) + " entries");
  }
}

}  // namespace

Scheme scheme_from_string(std::string_view name) {
  if (name == "noise") return Scheme::noise;
  if (name == "sampling") return Scheme::sampling;
  if (name == "quantile") return Scheme::quantile;
  if (name == "quantile_of_sample") return Scheme::quantile_of_sample;
  if (name == "kde") return Scheme::kde;
  throw ValidationError("unknown scheme '" + std::string(name) + "'");
}

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::noise: return "noise";
    case Scheme::sampling: return "sampling";
    case Scheme::quantile: return "quantile";
    case Scheme::quantile_of_sample: return "quantile_of_sample";
    case Scheme::kde: return "kde";
  }
  return "sampling";
}

ExperimentSpec ExperimentSpec::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("experiment JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("experiment JSON must be an object");
  ExperimentSpec spec;
  try {
    if (!j.contains("scheme")) throw ValidationError("experiment JSON needs 'scheme'");
    if (!j.contains("source")) throw ValidationError("experiment JSON needs 'source'");
    spec.scheme = scheme_from_string(j.at("scheme").get<std::string>());
    spec.source = j.at("source").get<std::string>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("kernel")) spec.kernel = j.at("kernel").get<std::string>();
    if (j.contains("noise_sample_size")) {
      spec.noise_sample_size = j.at("noise_sample_size").get<std::size_t>();
    }
    if (j.contains("tolerance")) spec.tolerance = j.at("tolerance").get<double>();
    if (j.contains("schedule")) {
      const auto& s = j.at("schedule");
      if (s.contains("n")) spec.n = s.at("n").get<std::vector<std::size_t>>();
      if (s.contains("ell")) spec.ell = s.at("ell").get<std::vector<int>>();
      if (s.contains("h")) spec.h = s.at("h").get<std::vector<double>>();
      if (s.contains("eps")) spec.eps = s.at("eps").get<std::vector<double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("experiment JSON: ") + e.what());
  }
  return spec;
}

std::uint64_t step_seed(std::uint64_t master, std::uint64_t step) {
  return splitmix64(splitmix64(master) ^ splitmix64(step + 0x632BE59BD9B4E019ULL));
}

Experiment build_experiment(const ExperimentSpec& spec) {
  const Distribution source = parse_distribution_spec(spec.source);
  source.require_m();
  Experiment e{{}, source, {}};
  switch (spec.scheme) {
    case Scheme::sampling: {
      if (spec.n.empty()) throw ValidationError("sampling needs schedule.n");
      for (std::size_t k = 0; k < spec.n.size(); ++k) {
        const auto s = SampleSet::synthetic(source, step_seed(spec.seed, k), spec.n[k]);
        e.sequence.push_back(empirical(s));
        e.parameters.push_back(static_cast<double>(spec.n[k]));
      }
      break;
    }
    case Scheme::quantile: {
      if (spec.ell.empty()) throw ValidationError("quantile needs schedule.ell");
      for (int ell : spec.ell) {
        e.sequence.push_back(quantile_approx(source, ell));
        e.parameters.push_back(ell);
      }
      break;
    }
    case Scheme::quantile_of_sample: {
      if (spec.n.empty()) throw ValidationError("quantile_of_sample needs schedule.n");
      require_length(spec.ell, spec.n.size(), "ell");
      for (std::size_t k = 0; k < spec.n.size(); ++k) {
        const auto s = SampleSet::synthetic(source, step_seed(spec.seed, k), spec.n[k]);
        e.sequence.push_back(quantile_of_sample(s, spec.ell[k]));
        e.parameters.push_back(static_cast<double>(spec.n[k]));
      }
      break;
    }
    case Scheme::kde: {
      if (spec.n.empty()) throw ValidationError("kde needs schedule.n");
      require_length(spec.h, spec.n.size(), "h");
      const KernelSpec kernel = KernelSpec::from_name(spec.kernel);
      for (std::size_t k = 0; k < spec.n.size(); ++k) {
        const auto s = SampleSet::synthetic(source, step_seed(spec.seed, k), spec.n[k]);
        e.sequence.push_back(kde(s, kernel, spec.h[k]));
        e.parameters.push_back(spec.h[k]);
      }
      break;
    }
    case Scheme::noise: {
      std::vector<double> eps = spec.eps;
      if (eps.empty()) {
        for (int k = 1; k <= 20; ++k) eps.push_back(std::ldexp(1.0, -k));
      }
      if (spec.noise_sample_size == 0) throw ValidationError("noise_sample_size must be positive");
      // Paired samples: X from the source, Y standard normal, Z = max(X + εY, 0).
      const auto x = sample(source, step_seed(spec.seed, 0), spec.noise_sample_size);
      const auto y = sample(Distribution::uniform(0.0, 1.0), step_seed(spec.seed, 1),
                            spec.noise_sample_size);
      std::vector<double> noise(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        // u = 0 has probability 2^-53; map it to the far left tail.
        const double u = std::max(y[i], 0x1.0p-60);
        noise[i] = -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
      }
      SampleSet clean;
      clean.values = x;
      e.limit = empirical(clean);
      for (double level : eps) {
        if (!(level >= 0.0)) throw ValidationError("noise levels must be nonnegative");
        SampleSet z;
        z.values.resize(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) z.values[i] = std::max(x[i] + level * noise[i], 0.0);
        e.sequence.push_back(empirical(z));
        e.parameters.push_back(level);
      }
      break;
    }
  }
  return e;
}

ConvergenceReport run_experiment(const ExperimentSpec& spec) {
  const Experiment e = build_experiment(spec);
  DiagnosticsOptions options;
  options.tolerance = spec.tolerance;
  options.parameters = e.parameters;
  return sequence_diagnostics(e.sequence, e.limit, options);
}

Experiment counterexample1(int steps) {
  if (steps < 1) throw ValidationError("steps must be positive");
  Experiment e{{}, Distribution::atom(1.0), {}};
  for (int n = 1; n <= steps; ++n) {
    const double big = static_cast<double>(n) * n;
    const double tail = 1.0 / big;
    if (n == 1) {
      e.sequence.push_back(Distribution::atom(1.0));
    } else {
      const double x[] = {1.0, big};
      const double w[] = {1.0 - tail, tail};
      e.sequence.push_back(Distribution::discrete(x, w));
    }
    e.parameters.push_back(n);
  }
  return e;
}

Experiment counterexample2(int steps) {
  if (steps < 1) throw ValidationError("steps must be positive");
  const double x_limit[] = {0.0, 1.0};
  const double w_limit[] = {0.5, 0.5};
  Experiment e{{}, Distribution::discrete(x_limit, w_limit), {}};
  for (int n = 1; n <= steps; ++n) {
    const double big = static_cast<double>(n) * n;
    const double tail = 1.0 / big;
    if (n == 1) {
      // 1 - 1/n^2 = 0 < ½: the middle group is empty and n^2 = 1.
      e.sequence.push_back(e.limit);
    } else {
      const double x[] = {0.0, 1.0, big};
      const double w[] = {0.5, 0.5 - tail, tail};
      e.sequence.push_back(Distribution::discrete(x, w));
    }
    e.parameters.push_back(n);
  }
  return e;
}

}  // namespace ineq
