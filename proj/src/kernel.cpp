#include "ineq/kernel.hpp"

#include <cmath>
#include <numbers>

#include "ineq/errors.hpp"

namespace ineq {

KernelSpec KernelSpec::from_name(std::string_view name) {
  if (name == "gaussian") return KernelSpec(KernelName::gaussian);
  if (name == "epanechnikov") return KernelSpec(KernelName::epanechnikov);
  if (name == "uniform") return KernelSpec(KernelName::uniform);
  throw ValidationError("unknown kernel '" + std::string(name) + "'");
}

std::string KernelSpec::name_string() const {
  switch (name_) {
    case KernelName::gaussian: return "gaussian";
    case KernelName::epanechnikov: return "epanechnikov";
    case KernelName::uniform: return "uniform";
  }
  return "gaussian";
}

double KernelSpec::density(double y) const {
  switch (name_) {
    case KernelName::gaussian:
      return std::exp(-0.5 * y * y) / std::sqrt(2.0 * std::numbers::pi);
    case KernelName::epanechnikov:
      return std::abs(y) <= 1.0 ? 0.75 * (1.0 - y * y) : 0.0;
    case KernelName::uniform:
      return std::abs(y) <= 1.0 ? 0.5 : 0.0;
  }
  return 0.0;
}

double KernelSpec::cdf(double y) const {
  switch (name_) {
    case KernelName::gaussian:
      return 0.5 * std::erfc(-y / std::numbers::sqrt2);
    case KernelName::epanechnikov:
      if (y <= -1.0) return 0.0;
      if (y >= 1.0) return 1.0;
      return 0.5 + 0.75 * (y - y * y * y / 3.0);
    case KernelName::uniform:
      if (y <= -1.0) return 0.0;
      if (y >= 1.0) return 1.0;
      return 0.5 * (y + 1.0);
  }
  return 0.0;
}

double KernelSpec::partial_first_moment(double y) const {
  switch (name_) {
    case KernelName::gaussian:
      return -density(y);
    case KernelName::epanechnikov: {
      if (std::abs(y) >= 1.0) return 0.0;
      const double s = 1.0 - y * y;
      return -0.1875 * s * s;
    }
    case KernelName::uniform:
      if (std::abs(y) >= 1.0) return 0.0;
      return 0.25 * (y * y - 1.0);
  }
  return 0.0;
}

double KernelSpec::first_abs_moment() const {
  switch (name_) {
    case KernelName::gaussian: return std::sqrt(2.0 / std::numbers::pi);
    case KernelName::epanechnikov: return 0.375;
    case KernelName::uniform: return 0.5;
  }
  return 0.0;
}

double KernelSpec::reach() const {
  // Φ(-9) ≈ 1.1e-19, below half an ulp of 1.
  return name_ == KernelName::gaussian ? 9.0 : 1.0;
}

}  // namespace ineq
