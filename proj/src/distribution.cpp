#include "ineq/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "ineq/errors.hpp"
#include "ineq/quadrature.hpp"

namespace ineq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

// Sorted centers with prefix sums, so cdf and partial moments only touch the
// window of centers whose kernel is neither fully below nor fully above.
struct SmoothedImpl {
  std::vector<double> centers;
  std::vector<double> prefix;  // prefix[i] = sum of centers[0..i)
  KernelSpec kernel;
  double bandwidth = 1.0;
  double mean = 0.0;

  double reach() const { return kernel.reach() * bandwidth; }
  double n() const { return static_cast<double>(centers.size()); }

  std::size_t first_at_least(double v) const {
    return static_cast<std::size_t>(
        std::lower_bound(centers.begin(), centers.end(), v) - centers.begin());
  }
  std::size_t first_above(double v) const {
    return static_cast<std::size_t>(
        std::upper_bound(centers.begin(), centers.end(), v) - centers.begin());
  }

  double cdf(double t) const {
    if (t < 0.0) return 0.0;
    const double r = reach();
    const std::size_t full = first_above(t - r);
    const std::size_t end = first_at_least(t + r);
    double s = static_cast<double>(full);
    for (std::size_t i = full; i < end; ++i) {
      s += kernel.cdf((t - centers[i]) / bandwidth);
    }
    return std::min(1.0, s / n());
  }

  // ∫_(0,q] y dν_i(y) for one center: the cut atom sits at 0 and adds nothing.
  double piece(double x, double q) const {
    const double zq = (q - x) / bandwidth;
    const double z0 = -x / bandwidth;
    return x * (kernel.cdf(zq) - kernel.cdf(z0)) +
           bandwidth * (kernel.partial_first_moment(zq) -
                        kernel.partial_first_moment(z0));
  }

  double partial_moment(double q) const {
    if (q <= 0.0) return 0.0;
    const double r = reach();
    const std::size_t lo = first_at_least(r);        // centers unaffected by the cut
    const std::size_t a = first_above(q - r);        // from here the upper end matters
    const std::size_t b = first_at_least(q + r);     // from here nothing is below q
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(lo, b); ++i) s += piece(centers[i], q);
    const std::size_t full_end = std::max(lo, a);
    if (full_end > lo) s += prefix[full_end] - prefix[lo];
    for (std::size_t i = std::max(lo, a); i < b; ++i) s += piece(centers[i], q);
    return s / n();
  }
};

using Continuous =
    std::variant<UniformDensity, Lognormal, Gamma, Exponential,
                 std::shared_ptr<const SmoothedImpl>>;

struct WeightedContinuous {
  double weight;
  Continuous part;
};

struct ContinuousOps {
  double x;
  double operator()(const UniformDensity& u) const {
    if (x <= u.a) return 0.0;
    if (x >= u.b) return 1.0;
    return (x - u.a) / (u.b - u.a);
  }
  double operator()(const Lognormal& l) const {
    if (x <= 0.0) return 0.0;
    return normal_cdf((std::log(x) - l.log_mean) / l.log_sd);
  }
  double operator()(const Gamma& g) const {
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p(g.shape, x / g.scale);
  }
  double operator()(const Exponential& e) const {
    if (x <= 0.0) return 0.0;
    return -std::expm1(-e.rate * x);
  }
  double operator()(const std::shared_ptr<const SmoothedImpl>& s) const {
    return s->cdf(x);
  }
};

// Left limit of the cdf; only the cut-in-zero atom is a jump.
double continuous_cdf_left(const Continuous& c, double x) {
  if (std::holds_alternative<std::shared_ptr<const SmoothedImpl>>(c) && x <= 0.0) {
    return 0.0;
  }
  return std::visit(ContinuousOps{x}, c);
}

struct PartialMomentOps {
  double q;
  double operator()(const UniformDensity& u) const {
    if (q <= u.a) return 0.0;
    const double top = std::min(q, u.b);
    return (top * top - u.a * u.a) / (2.0 * (u.b - u.a));
  }
  double operator()(const Lognormal& l) const {
    if (q <= 0.0) return 0.0;
    const double s2 = l.log_sd * l.log_sd;
    return std::exp(l.log_mean + 0.5 * s2) *
           normal_cdf((std::log(q) - l.log_mean - s2) / l.log_sd);
  }
  double operator()(const Gamma& g) const {
    if (q <= 0.0) return 0.0;
    return g.shape * g.scale * boost::math::gamma_p(g.shape + 1.0, q / g.scale);
  }
  double operator()(const Exponential& e) const {
    if (q <= 0.0) return 0.0;
    const double lq = e.rate * q;
    return (-std::expm1(-lq) - lq * std::exp(-lq)) / e.rate;
  }
  double operator()(const std::shared_ptr<const SmoothedImpl>& s) const {
    return s->partial_moment(q);
  }
};

struct MeanOps {
  double operator()(const UniformDensity& u) const { return 0.5 * (u.a + u.b); }
  double operator()(const Lognormal& l) const {
    return std::exp(l.log_mean + 0.5 * l.log_sd * l.log_sd);
  }
  double operator()(const Gamma& g) const { return g.shape * g.scale; }
  double operator()(const Exponential& e) const { return 1.0 / e.rate; }
  double operator()(const std::shared_ptr<const SmoothedImpl>& s) const {
    return s->mean;
  }
};

// Closed-form quantile when the component is the whole distribution. The
// smoothed estimate has none and falls back to bisection.
struct QuantileOps {
  double p;
  std::optional<double> operator()(const UniformDensity& u) const {
    return u.a + p * (u.b - u.a);
  }
  std::optional<double> operator()(const Lognormal& l) const {
    return std::exp(l.log_mean + l.log_sd * normal_quantile(p));
  }
  std::optional<double> operator()(const Gamma& g) const {
    return g.scale * boost::math::gamma_p_inv(g.shape, p);
  }
  std::optional<double> operator()(const Exponential& e) const {
    return -std::log1p(-p) / e.rate;
  }
  std::optional<double> operator()(const std::shared_ptr<const SmoothedImpl>&) const {
    return std::nullopt;
  }
};

struct UpperOps {
  double operator()(const UniformDensity& u) const { return u.b; }
  double operator()(const Lognormal&) const { return kInf; }
  double operator()(const Gamma&) const { return kInf; }
  double operator()(const Exponential&) const { return kInf; }
  double operator()(const std::shared_ptr<const SmoothedImpl>& s) const {
    return s->centers.back() + s->reach();
  }
};

double continuous_truncation(const Continuous& c) {
  const double upper = std::visit(UpperOps{}, c);
  if (std::isfinite(upper)) return upper;
  return *std::visit(QuantileOps{1.0 - kTailMass}, c);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ValidationError(std::string(what) + " must be finite");
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

struct Distribution::Impl {
  std::vector<WeightedComponent> components;

  // All atoms merged by location, sorted; atom_cum[i] = mass of atoms <= loc[i].
  std::vector<double> atom_loc;
  std::vector<double> atom_w;
  std::vector<double> atom_cum;
  std::vector<WeightedContinuous> continuous;

  std::vector<double> breaks;
  double mean = 0.0;
  double support_max = 0.0;
  double truncation = 0.0;
  bool unbounded = false;

  double atom_cdf(double x) const {
    const auto k = std::upper_bound(atom_loc.begin(), atom_loc.end(), x) - atom_loc.begin();
    return k == 0 ? 0.0 : atom_cum[static_cast<std::size_t>(k - 1)];
  }
  double atom_cdf_left(double x) const {
    const auto k = std::lower_bound(atom_loc.begin(), atom_loc.end(), x) - atom_loc.begin();
    return k == 0 ? 0.0 : atom_cum[static_cast<std::size_t>(k - 1)];
  }

  double cdf(double x) const {
    double s = atom_cdf(x);
    for (const auto& [w, c] : continuous) s += w * std::visit(ContinuousOps{x}, c);
    return std::clamp(s, 0.0, 1.0);
  }
  double cdf_left(double x) const {
    double s = atom_cdf_left(x);
    for (const auto& [w, c] : continuous) s += w * continuous_cdf_left(c, x);
    return std::clamp(s, 0.0, 1.0);
  }
  double partial_moment(double q) const {
    if (q < 0.0) return 0.0;
    double s = 0.0;
    const auto k = std::upper_bound(atom_loc.begin(), atom_loc.end(), q) - atom_loc.begin();
    for (std::ptrdiff_t i = 0; i < k; ++i) {
      s += atom_w[static_cast<std::size_t>(i)] * atom_loc[static_cast<std::size_t>(i)];
    }
    for (const auto& [w, c] : continuous) s += w * std::visit(PartialMomentOps{q}, c);
    return s;
  }

  // Smallest q in (lo, hi] with cdf(q) >= p, given cdf(lo) < p <= cdf(hi).
  double bisect(double lo, double hi, double p) const {
    for (int iter = 0; iter < 400; ++iter) {
      const double mid = lo + 0.5 * (hi - lo);
      if (!(mid > lo && mid < hi)) break;
      if (cdf(mid) >= p) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  }

  // A closed-form quantile can be off by a few ulps; walk it to the smallest
  // double whose cdf reaches p so that the Galois inequalities hold exactly.
  std::optional<double> polish(double q, double p) const {
    if (!std::isfinite(q)) return std::nullopt;
    q = std::max(q, 0.0);
    int steps = 0;
    while (cdf(q) < p) {
      if (++steps > 64) return std::nullopt;
      q = std::nextafter(q, kInf);
    }
    while (q > 0.0) {
      const double below = std::nextafter(q, 0.0);
      if (cdf(below) < p) break;
      if (++steps > 128) return std::nullopt;
      q = below;
    }
    return q;
  }

  double quantile(double p) const {
    if (p == 0.0) return 0.0;
    if (continuous.empty()) {
      const auto k = std::lower_bound(atom_cum.begin(), atom_cum.end(), p) - atom_cum.begin();
      const auto idx = std::min<std::size_t>(static_cast<std::size_t>(k), atom_loc.size() - 1);
      return atom_loc[idx];
    }
    if (atom_loc.empty() && continuous.size() == 1) {
      if (auto q = std::visit(QuantileOps{p}, continuous.front().part)) {
        if (auto exact = polish(*q, p)) return *exact;
      }
    }
    // Locate the first breakpoint whose cdf reaches p.
    const auto it = std::partition_point(breaks.begin(), breaks.end(),
                                         [&](double b) { return cdf(b) < p; });
    if (it != breaks.end()) {
      if (it == breaks.begin()) return *it;
      if (cdf_left(*it) < p) return *it;
      return bisect(*(it - 1), *it, p);
    }
    double lo = breaks.back();
    double hi = std::max({2.0 * lo, truncation, 1.0});
    for (int i = 0; i < 2000 && cdf(hi) < p; ++i) {
      lo = hi;
      hi *= 2.0;
    }
    return bisect(lo, hi, p);
  }
};

namespace {

void add_atom(std::vector<std::pair<double, double>>& atoms, double loc, double w) {
  atoms.emplace_back(loc, w);
}

void validate_table(const QuantileTable& t) {
  if (t.grid.empty() || t.grid.size() != t.values.size()) {
    throw ValidationError("quantile table needs matching nonempty grid and values");
  }
  if (t.grid.front() != 0.0) throw ValidationError("quantile table grid must start at 0");
  for (std::size_t i = 0; i < t.grid.size(); ++i) {
    require_finite(t.grid[i], "quantile table grid");
    require_finite(t.values[i], "quantile table value");
    if (t.values[i] < 0.0) throw ValidationError("quantile table values must be nonnegative");
    if (i > 0 && !(t.grid[i] > t.grid[i - 1])) {
      throw ValidationError("quantile table grid must be strictly increasing");
    }
    if (i > 0 && t.values[i] < t.values[i - 1]) {
      throw ValidationError("quantile table values must be nondecreasing");
    }
  }
  if (t.mode == TableMode::step && !(t.grid.back() < 1.0)) {
    throw ValidationError("step quantile table grid must lie in [0,1)");
  }
  if (t.mode == TableMode::linear && (t.grid.size() < 2 || t.grid.back() != 1.0)) {
    throw ValidationError("linear quantile table grid must end at 1");
  }
}

}  // namespace

Distribution::Distribution(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Distribution::Distribution(std::vector<WeightedComponent> components) {
  if (components.empty()) throw ValidationError("distribution needs at least one component");
  // Neumaier summation: empirical measures carry up to millions of 1/n weights.
  double total = 0.0;
  double carry = 0.0;
  for (const auto& wc : components) {
    if (!(wc.weight > 0.0) || wc.weight > 1.0 + kWeightTolerance) {
      throw ValidationError("component weights must lie in (0,1]");
    }
    const double t = total + wc.weight;
    carry += std::abs(total) >= wc.weight ? (total - t) + wc.weight : (wc.weight - t) + total;
    total = t;
  }
  total += carry;
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw ValidationError("component weights sum to " + format_number(total) + ", not 1");
  }

  auto impl = std::make_shared<Impl>();
  std::vector<std::pair<double, double>> atoms;
  for (auto& wc : components) {
    wc.weight /= total;
    const double w = wc.weight;
    std::visit(
        [&](const auto& c) {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, Atom>) {
            require_finite(c.location, "atom location");
            if (c.location < 0.0) throw ValidationError("atom location must be nonnegative");
            add_atom(atoms, c.location, w);
          } else if constexpr (std::is_same_v<T, UniformDensity>) {
            require_finite(c.a, "uniform bound");
            require_finite(c.b, "uniform bound");
            if (c.a < 0.0 || !(c.b > c.a)) throw ValidationError("uniform needs 0 <= a < b");
            impl->continuous.push_back({w, c});
          } else if constexpr (std::is_same_v<T, Lognormal>) {
            require_finite(c.log_mean, "lognormal log-mean");
            if (!(c.log_sd > 0.0) || !std::isfinite(c.log_sd)) {
              throw ValidationError("lognormal log-sd must be positive");
            }
            impl->continuous.push_back({w, c});
          } else if constexpr (std::is_same_v<T, Gamma>) {
            if (!(c.shape > 0.0) || !(c.scale > 0.0) || !std::isfinite(c.shape) ||
                !std::isfinite(c.scale)) {
              throw ValidationError("gamma shape and scale must be positive");
            }
            impl->continuous.push_back({w, c});
          } else if constexpr (std::is_same_v<T, Exponential>) {
            if (!(c.rate > 0.0) || !std::isfinite(c.rate)) {
              throw ValidationError("exponential rate must be positive");
            }
            impl->continuous.push_back({w, c});
          } else if constexpr (std::is_same_v<T, QuantileTable>) {
            validate_table(c);
            const std::size_t k = c.grid.size();
            if (c.mode == TableMode::step) {
              for (std::size_t i = 0; i < k; ++i) {
                const double next = i + 1 < k ? c.grid[i + 1] : 1.0;
                add_atom(atoms, c.values[i], w * (next - c.grid[i]));
              }
            } else {
              for (std::size_t i = 0; i + 1 < k; ++i) {
                const double mass = w * (c.grid[i + 1] - c.grid[i]);
                if (c.values[i + 1] > c.values[i]) {
                  impl->continuous.push_back({mass, UniformDensity{c.values[i], c.values[i + 1]}});
                } else {
                  add_atom(atoms, c.values[i], mass);
                }
              }
            }
          } else if constexpr (std::is_same_v<T, KernelSmoothed>) {
            if (c.centers.empty()) throw ValidationError("kernel estimate needs data");
            if (!(c.bandwidth > 0.0) || !std::isfinite(c.bandwidth)) {
              throw DomainError("bandwidth must be positive");
            }
            auto s = std::make_shared<SmoothedImpl>();
            s->centers = c.centers;
            for (double x : s->centers) {
              require_finite(x, "kernel center");
              if (x < 0.0) throw ValidationError("kernel centers must be nonnegative");
            }
            std::sort(s->centers.begin(), s->centers.end());
            s->prefix.resize(s->centers.size() + 1, 0.0);
            for (std::size_t i = 0; i < s->centers.size(); ++i) {
              s->prefix[i + 1] = s->prefix[i] + s->centers[i];
            }
            s->kernel = c.kernel;
            s->bandwidth = c.bandwidth;
            double m = 0.0;
            for (double x : s->centers) {
              const double z0 = -x / c.bandwidth;
              m += x * (1.0 - c.kernel.cdf(z0)) -
                   c.bandwidth * c.kernel.partial_first_moment(z0);
            }
            s->mean = m / s->n();
            impl->continuous.push_back({w, std::shared_ptr<const SmoothedImpl>(s)});
          }
        },
        wc.component);
  }

  std::sort(atoms.begin(), atoms.end());
  for (const auto& [loc, w] : atoms) {
    if (!impl->atom_loc.empty() && impl->atom_loc.back() == loc) {
      impl->atom_w.back() += w;
    } else {
      impl->atom_loc.push_back(loc);
      impl->atom_w.push_back(w);
    }
  }
  impl->atom_cum.resize(impl->atom_w.size());
  std::partial_sum(impl->atom_w.begin(), impl->atom_w.end(), impl->atom_cum.begin());
  if (impl->continuous.empty() && !impl->atom_cum.empty()) impl->atom_cum.back() = 1.0;

  std::vector<double> breaks{0.0};
  breaks.insert(breaks.end(), impl->atom_loc.begin(), impl->atom_loc.end());
  double mean = 0.0;
  for (std::size_t i = 0; i < impl->atom_loc.size(); ++i) {
    mean += impl->atom_w[i] * impl->atom_loc[i];
  }
  double support = impl->atom_loc.empty() ? 0.0 : impl->atom_loc.back();
  double truncation = support;
  for (const auto& [w, c] : impl->continuous) {
    mean += w * std::visit(MeanOps{}, c);
    if (const auto* u = std::get_if<UniformDensity>(&c)) {
      breaks.push_back(u->a);
      breaks.push_back(u->b);
    }
    support = std::max(support, std::visit(UpperOps{}, c));
    truncation = std::max(truncation, continuous_truncation(c));
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  impl->breaks = std::move(breaks);
  if (!std::isfinite(mean)) throw DivergenceError("distribution has infinite mean");
  impl->mean = mean;
  impl->support_max = support;
  impl->unbounded = !std::isfinite(support);
  impl->truncation = truncation;
  impl->components = std::move(components);
  impl_ = std::move(impl);
}

Distribution Distribution::atom(double location) {
  return Distribution({{1.0, Atom{location}}});
}
Distribution Distribution::uniform(double a, double b) {
  return Distribution({{1.0, UniformDensity{a, b}}});
}
Distribution Distribution::lognormal(double log_mean, double log_sd) {
  return Distribution({{1.0, Lognormal{log_mean, log_sd}}});
}
Distribution Distribution::gamma(double shape, double scale) {
  return Distribution({{1.0, Gamma{shape, scale}}});
}
Distribution Distribution::exponential(double rate) {
  return Distribution({{1.0, Exponential{rate}}});
}
Distribution Distribution::from_table(QuantileTable table) {
  return Distribution({{1.0, std::move(table)}});
}
Distribution Distribution::discrete(std::span<const double> locations,
                                    std::span<const double> weights) {
  if (locations.size() != weights.size() || locations.empty()) {
    throw ValidationError("discrete distribution needs matching nonempty locations and weights");
  }
  std::vector<WeightedComponent> parts;
  parts.reserve(locations.size());
  for (std::size_t i = 0; i < locations.size(); ++i) {
    parts.push_back({weights[i], Atom{locations[i]}});
  }
  return Distribution(std::move(parts));
}

std::span<const WeightedComponent> Distribution::components() const {
  return impl_->components;
}

double Distribution::cdf(double x) const {
  if (!(x >= 0.0)) throw DomainError("cdf argument must be nonnegative");
  return impl_->cdf(x);
}

double Distribution::cdf_left(double x) const {
  if (!(x >= 0.0)) throw DomainError("cdf argument must be nonnegative");
  return impl_->cdf_left(x);
}

double Distribution::quantile(double p) const {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("quantile probability must lie in [0,1)");
  return impl_->quantile(p);
}

double Distribution::integral_quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability must lie in [0,1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return impl_->mean;
  const double q = impl_->quantile(p);
  // On [F(q-), F(q)] the quantile is flat at q.
  const double value = impl_->partial_moment(q) - q * (impl_->cdf(q) - p);
  return std::clamp(value, 0.0, impl_->mean);
}

double Distribution::partial_moment(double q) const {
  if (!(q >= 0.0)) throw DomainError("moment bound must be nonnegative");
  return impl_->partial_moment(q);
}

double Distribution::tail_moment(double alpha) const {
  if (!(alpha >= 0.0)) throw DomainError("tail threshold must be nonnegative");
  return std::max(0.0, impl_->mean - impl_->partial_moment(alpha));
}

double Distribution::mean() const { return impl_->mean; }

double Distribution::mean_via_survival() const {
  const Impl& d = *impl_;
  if (d.continuous.empty()) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < d.atom_loc.size(); ++i) {
      s += (d.atom_loc[i + 1] - d.atom_loc[i]) * (1.0 - d.atom_cum[i]);
    }
    return s + (d.atom_loc.empty() ? 0.0 : d.atom_loc.front());
  }
  auto points = make_partition({d.breaks.begin(), d.breaks.end()}, 0.0, d.truncation);
  auto r = integrate([&](double x) { return 1.0 - d.cdf(x); }, points,
                     {.abs_tol = 1e-12, .rel_tol = 1e-13, .max_subdivisions = 20000});
  return r.value;
}

double Distribution::mean_via_quantile() const {
  const Impl& d = *impl_;
  if (d.continuous.empty()) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.atom_loc.size(); ++i) s += d.atom_w[i] * d.atom_loc[i];
    return s;
  }
  const auto points = probability_breakpoints();
  auto r = integrate([&](double p) { return d.quantile(p); }, points,
                     {.abs_tol = 1e-12, .rel_tol = 1e-13, .max_subdivisions = 20000});
  return r.value;
}

bool Distribution::in_m() const { return impl_->mean > 0.0 && std::isfinite(impl_->mean); }

void Distribution::require_m() const {
  if (!std::isfinite(impl_->mean)) throw DivergenceError("distribution has infinite mean");
  if (!(impl_->mean > 0.0)) throw OutsideMError();
}

bool Distribution::is_discrete() const { return impl_->continuous.empty(); }

std::span<const double> Distribution::atom_locations() const { return impl_->atom_loc; }
std::span<const double> Distribution::atom_weights() const { return impl_->atom_w; }
std::span<const double> Distribution::atom_cumulative() const { return impl_->atom_cum; }
std::span<const double> Distribution::breakpoints() const { return impl_->breaks; }

std::vector<double> Distribution::probability_breakpoints() const {
  std::vector<double> probs{0.0, 1.0};
  for (double b : impl_->breaks) {
    probs.push_back(impl_->cdf_left(b));
    probs.push_back(impl_->cdf(b));
  }
  if (impl_->unbounded) {
    for (int k = 1; k <= 40; ++k) probs.push_back(1.0 - std::ldexp(1.0, -k));
  }
  return make_partition(std::move(probs), 0.0, 1.0);
}

double Distribution::support_max() const { return impl_->support_max; }
double Distribution::truncation_point() const { return impl_->truncation; }
bool Distribution::has_unbounded_support() const { return impl_->unbounded; }

std::string Distribution::describe() const {
  auto one = [](const Component& c) -> std::string {
    return std::visit(
        [](const auto& v) -> std::string {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Atom>) {
            return "atom(" + format_number(v.location) + ")";
          } else if constexpr (std::is_same_v<T, UniformDensity>) {
            return "uniform(" + format_number(v.a) + "," + format_number(v.b) + ")";
          } else if constexpr (std::is_same_v<T, Lognormal>) {
            return "lognormal(" + format_number(v.log_mean) + "," + format_number(v.log_sd) + ")";
          } else if constexpr (std::is_same_v<T, Gamma>) {
            return "gamma(" + format_number(v.shape) + "," + format_number(v.scale) + ")";
          } else if constexpr (std::is_same_v<T, Exponential>) {
            return "exp(" + format_number(v.rate) + ")";
          } else if constexpr (std::is_same_v<T, QuantileTable>) {
            return "table[" + std::to_string(v.grid.size()) + "]";
          } else {
            return "kde[" + v.kernel.name_string() + "," + std::to_string(v.centers.size()) +
                   "," + format_number(v.bandwidth) + "]";
          }
        },
        c);
  };
  const auto& comps = impl_->components;
  if (comps.size() == 1) return one(comps.front().component);
  std::string out = "mix(";
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i > 0) out += ",";
    out += format_number(comps[i].weight) + "*" + one(comps[i].component);
  }
  return out + ")";
}

Distribution mixture(std::span<const std::pair<double, Distribution>> parts) {
  if (parts.empty()) throw ValidationError("mixture needs at least one part");
  double total = 0.0;
  for (const auto& [w, d] : parts) {
    if (!(w > 0.0)) throw ValidationError("mixture weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw ValidationError("mixture weights sum to " + format_number(total) + ", not 1");
  }
  std::vector<WeightedComponent> flat;
  for (const auto& [w, d] : parts) {
    for (const auto& wc : d.components()) flat.push_back({w * wc.weight, wc.component});
  }
  return Distribution(std::move(flat));
}

Distribution mixture(std::initializer_list<std::pair<double, Distribution>> parts) {
  return mixture(std::span<const std::pair<double, Distribution>>(parts.begin(), parts.size()));
}

Distribution rescale(const Distribution& d, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("rescale factor must be positive");
  std::vector<WeightedComponent> out;
  for (const auto& wc : d.components()) {
    Component c = std::visit(
        [alpha](const auto& v) -> Component {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Atom>) {
            return Atom{alpha * v.location};
          } else if constexpr (std::is_same_v<T, UniformDensity>) {
            return UniformDensity{alpha * v.a, alpha * v.b};
          } else if constexpr (std::is_same_v<T, Lognormal>) {
            return Lognormal{v.log_mean + std::log(alpha), v.log_sd};
          } else if constexpr (std::is_same_v<T, Gamma>) {
            return Gamma{v.shape, alpha * v.scale};
          } else if constexpr (std::is_same_v<T, Exponential>) {
            return Exponential{v.rate / alpha};
          } else if constexpr (std::is_same_v<T, QuantileTable>) {
            QuantileTable t = v;
            for (double& x : t.values) x *= alpha;
            return t;
          } else {
            KernelSmoothed k = v;
            for (double& x : k.centers) x *= alpha;
            k.bandwidth *= alpha;
            return k;
          }
        },
        wc.component);
    out.push_back({wc.weight, std::move(c)});
  }
  return Distribution(std::move(out));
}

bool fsd_dominates(const Distribution& upper, const Distribution& lower, int grid) {
  if (grid < 2) throw DomainError("fsd grid must have at least 2 points");
  const double top = std::max(upper.truncation_point(), lower.truncation_point());
  std::vector<double> xs(upper.breakpoints().begin(), upper.breakpoints().end());
  xs.insert(xs.end(), lower.breakpoints().begin(), lower.breakpoints().end());
  for (int i = 0; i <= grid; ++i) xs.push_back(top * i / grid);

  std::vector<double> ps = upper.probability_breakpoints();
  const auto more = lower.probability_breakpoints();
  ps.insert(ps.end(), more.begin(), more.end());
  for (int i = 0; i < grid; ++i) ps.push_back(static_cast<double>(i) / grid);

  // Cross-feed the probes: F-side violations at x show up on the Q side at
  // p = F_upper(x), and Q-side violations at p show up at x = Q_upper(p).
  for (std::size_t i = 0, n = ps.size(); i < n; ++i) {
    if (ps[i] < 1.0) {
      xs.push_back(upper.quantile(ps[i]));
      xs.push_back(lower.quantile(ps[i]));
    }
  }
  for (std::size_t i = 0, n = xs.size(); i < n; ++i) {
    if (xs[i] >= 0.0) {
      ps.push_back(upper.cdf(xs[i]));
      ps.push_back(lower.cdf(xs[i]));
    }
  }
  // One more round closes the sets, since Q_upper(F_upper(Q_upper(p))) is
  // Q_upper(p) again.
  const std::size_t nx = xs.size();
  for (std::size_t i = 0, n = ps.size(); i < n; ++i) {
    if (ps[i] < 1.0) xs.push_back(upper.quantile(ps[i]));
  }
  for (std::size_t i = nx; i < xs.size(); ++i) ps.push_back(upper.cdf(xs[i]));

  // Weight sums carry rounding, so both routes allow kWeightTolerance of
  // probability slack; the slacked tests stay equivalent.
  bool cdf_route = true;
  for (double x : xs) {
    if (upper.cdf(x) > lower.cdf(x) + kWeightTolerance) {
      cdf_route = false;
      break;
    }
  }
  bool quantile_route = true;
  for (double p : ps) {
    if (p >= 1.0 || p < kWeightTolerance) continue;
    if (upper.quantile(p) < lower.quantile(p - kWeightTolerance)) {
      quantile_route = false;
      break;
    }
  }
  if (cdf_route != quantile_route) {
    throw std::logic_error("fsd: cdf and quantile routes disagree");
  }
  return cdf_route;
}

std::vector<double> sample(const Distribution& d, std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    out.push_back(d.quantile(u));
  }
  return out;
}

double kolmogorov_distance(const Distribution& a, const Distribution& b, int grid) {
  std::vector<double> xs(a.breakpoints().begin(), a.breakpoints().end());
  xs.insert(xs.end(), b.breakpoints().begin(), b.breakpoints().end());
  const double top = std::max(a.truncation_point(), b.truncation_point());
  for (int i = 0; i <= grid; ++i) xs.push_back(top * i / grid);
  double sup = 0.0;
  for (double x : xs) {
    sup = std::max(sup, std::abs(a.cdf(x) - b.cdf(x)));
    sup = std::max(sup, std::abs(a.cdf_left(x) - b.cdf_left(x)));
  }
  return sup;
}

}  // namespace ineq
