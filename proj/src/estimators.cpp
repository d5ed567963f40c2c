#include "ineq/estimators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <string>

#include "ineq/errors.hpp"

namespace ineq {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double positive_total(const SampleSet& s) {
  if (s.values.empty()) throw ValidationError("sample is empty");
  const double total = std::accumulate(s.values.begin(), s.values.end(), 0.0);
  if (!(total > 0.0)) throw OutsideMError("sample sums to zero (outside M)");
  return total;
}

}  // namespace

SampleSet SampleSet::synthetic(const Distribution& source, std::uint64_t seed, std::size_t n) {
  SampleSet s;
  s.values = sample(source, seed, n);
  s.provenance.kind = Provenance::Kind::synthetic;
  s.provenance.seed = seed;
  s.provenance.source_spec = source.describe();
  return s;
}

SampleSet read_samples(std::istream& in, const std::string& name) {
  SampleSet s;
  s.provenance.kind = Provenance::Kind::file;
  s.provenance.path = name;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    // Tolerate a trailing CSV separator.
    if (!view.empty() && view.back() == ',') view = trim(view.substr(0, view.size() - 1));
    if (view.empty()) continue;
    if (view.front() == '+') view.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), value);
    const auto where = name + ":" + std::to_string(line_no) + ": ";
    if (ec != std::errc() || ptr != view.data() + view.size()) {
      throw ValidationError(where + "not a number: '" + std::string(view) + "'");
    }
    if (std::isnan(value)) throw ValidationError(where + "NaN is not allowed");
    if (!std::isfinite(value)) throw ValidationError(where + "value must be finite");
    if (value < 0.0) throw ValidationError(where + "value must be nonnegative");
    s.values.push_back(value);
  }
  if (s.values.empty()) throw ValidationError(name + ": no samples");
  return s;
}

SampleSet read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open sample file '" + path + "'");
  return read_samples(in, path);
}

Distribution empirical(const SampleSet& s) {
  if (s.values.empty()) throw ValidationError("sample is empty");
  std::vector<double> sorted = s.values;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<double> locations;
  std::vector<double> weights;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    locations.push_back(sorted[i]);
    weights.push_back(static_cast<double>(j - i) / n);
    i = j;
  }
  return Distribution::discrete(locations, weights);
}

Distribution quantile_approx(const Distribution& d, int ell) {
  if (ell < 1) throw DomainError("quantile approximation needs ell >= 1");
  d.require_m();
  std::vector<double> locations;
  locations.reserve(static_cast<std::size_t>(ell));
  for (int k = 0; k < ell; ++k) locations.push_back(d.quantile(static_cast<double>(k) / ell));
  const std::vector<double> weights(locations.size(), 1.0 / ell);
  return Distribution::discrete(locations, weights);
}

Distribution quantile_of_sample(const SampleSet& s, int ell) {
  return quantile_approx(empirical(s), ell);
}

Distribution kde(const SampleSet& s, const KernelSpec& kernel, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("bandwidth must be positive");
  if (s.values.empty()) throw ValidationError("sample is empty");
  return Distribution({{1.0, KernelSmoothed{s.values, kernel, h}}});
}

double estimate_gini(const SampleSet& s) {
  const double total = positive_total(s);
  std::vector<double> x = s.values;
  std::sort(x.begin(), x.end());
  // Σ_i Σ_j |x_i - x_j| = 2 Σ_k (2k - n + 1) x_(k) over sorted values.
  const double n = static_cast<double>(x.size());
  double pairs = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    pairs += (2.0 * static_cast<double>(k) - n + 1.0) * x[k];
  }
  return 2.0 * pairs / (2.0 * n * total);
}

double estimate_hoover(const SampleSet& s) {
  const double total = positive_total(s);
  const double mean = total / static_cast<double>(s.values.size());
  double dev = 0.0;
  for (double v : s.values) dev += std::abs(v - mean);
  return dev / (2.0 * total);
}

double estimate_lorenz_at(const SampleSet& s, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("Lorenz estimate needs x in [0,1]");
  const double total = positive_total(s);
  std::vector<double> v = s.values;
  std::sort(v.begin(), v.end());
  const double nx = x * static_cast<double>(v.size());
  const auto k = std::min(static_cast<std::size_t>(std::floor(nx)), v.size());
  const double f = nx - static_cast<double>(k);
  const double below = std::accumulate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
  const double next = k < v.size() ? below + v[k] : below;
  return std::clamp((f * next + (1.0 - f) * below) / total, 0.0, 1.0);
}

}  // namespace ineq
