#pragma once

#include <string>
#include <string_view>

namespace ineq {

enum class KernelName { gaussian, epanechnikov, uniform };

// A smoothing kernel on the real line: a probability density K with
// distribution function G and first absolute moment E|Y|.
class KernelSpec {
 public:
  explicit KernelSpec(KernelName name = KernelName::gaussian) : name_(name) {}

  static KernelSpec from_name(std::string_view name);

  KernelName name() const { return name_; }
  std::string name_string() const;

  double density(double y) const;
  double cdf(double y) const;
  // ∫_{-∞}^{y} s K(s) ds; tends to 0 at both ends for a symmetric kernel.
  double partial_first_moment(double y) const;
  double first_abs_moment() const;
  // Beyond ±reach the cdf is 0 or 1 to double precision.
  double reach() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  KernelName name_;
};

}  // namespace ineq
