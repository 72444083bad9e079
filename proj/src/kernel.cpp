#include "gelkit/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "gelkit/errors.hpp"

namespace gelkit {

namespace {

void require_mass(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("kernel argument must be a finite positive mass, got " + std::to_string(x));
  }
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("kernel exponent alpha must lie in (0,1], got " + std::to_string(alpha));
  }
}

// (1+r)^(1+a) - 1 - r^(1+a) for r in (0,1], without cancellation for small r.
double aldous_denominator(double r, double alpha) {
  return std::expm1((1.0 + alpha) * std::log1p(r)) - std::pow(r, 1.0 + alpha);
}

}  // namespace

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Multiplicative:
      return "multiplicative";
    case KernelFamily::SymmetricAlpha:
      return "symmetric_alpha";
    case KernelFamily::Aldous:
      return "aldous";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "multiplicative") return KernelFamily::Multiplicative;
  if (name == "symmetric_alpha") return KernelFamily::SymmetricAlpha;
  if (name == "aldous") return KernelFamily::Aldous;
  throw ConfigError("unknown kernel family '" + std::string(name) + "'");
}

KernelSpec KernelSpec::multiplicative() { return {KernelFamily::Multiplicative, 1.0, 0.5, 0.5}; }

KernelSpec KernelSpec::symmetric_alpha(double alpha) {
  require_alpha(alpha);
  return {KernelFamily::SymmetricAlpha, alpha, 1.0, 1.0};
}

// K is homogeneous of degree 1+a, so K(x,y) / (x^a y + x y^a) depends only on
// r = min/max. That ratio is monotone in r; its endpoint values are
// 1/(2^(1+a) - 2) at r = 1 and 2/(1+a) as r -> 0 (1/2 everywhere when a = 1).
KernelSpec KernelSpec::aldous(double alpha) {
  require_alpha(alpha);
  const double at_diagonal = 1.0 / (std::exp2(1.0 + alpha) - 2.0);
  const double at_zero = alpha < 1.0 ? 2.0 / (1.0 + alpha) : 0.5;
  return {KernelFamily::Aldous, alpha, std::min(at_diagonal, at_zero),
          std::max(at_diagonal, at_zero)};
}

KernelSpec KernelSpec::make(KernelFamily family, double alpha) {
  switch (family) {
    case KernelFamily::Multiplicative:
      if (alpha != 1.0) throw ConfigError("the multiplicative kernel has alpha = 1");
      return multiplicative();
    case KernelFamily::SymmetricAlpha:
      return symmetric_alpha(alpha);
    case KernelFamily::Aldous:
      return aldous(alpha);
  }
  throw ConfigError("unknown kernel family");
}

double KernelSpec::alpha_form(double x, double y) const {
  if (alpha_ == 1.0) return 2.0 * x * y;
  return std::pow(x, alpha_) * y + x * std::pow(y, alpha_);
}

double KernelSpec::evaluate(double x, double y) const {
  require_mass(x);
  require_mass(y);
  switch (family_) {
    case KernelFamily::Multiplicative:
      return x * y;
    case KernelFamily::SymmetricAlpha:
      return alpha_form(x, y);
    case KernelFamily::Aldous: {
      if (x > y) std::swap(x, y);
      // 2 (xy)^(1+a) / ((x+y)^(1+a) - x^(1+a) - y^(1+a)) with y^(1+a) factored out.
      return 2.0 * std::pow(x, 1.0 + alpha_) / aldous_denominator(x / y, alpha_);
    }
  }
  return 0.0;
}

double KernelSpec::limit(double x) const {
  require_mass(x);
  switch (family_) {
    case KernelFamily::Multiplicative:
      return x;
    case KernelFamily::SymmetricAlpha:
      return alpha_ == 1.0 ? 2.0 * x : std::pow(x, alpha_);
    case KernelFamily::Aldous:
      // Leading term of the denominator is (1+a) x y^a.
      return 2.0 * std::pow(x, alpha_) / (1.0 + alpha_);
  }
  return 0.0;
}

double KernelSpec::majorant(double x, double y) const {
  require_mass(x);
  require_mass(y);
  return c_upper_ * alpha_form(x, y);
}

double KernelSpec::minorant(double x, double y) const {
  require_mass(x);
  require_mass(y);
  return c_lower_ * alpha_form(x, y);
}

Cutoff Cutoff::at(double a) {
  if (!(a > 0.0)) throw ConfigError("cutoff must be positive");
  return Cutoff{a};
}

double evaluate_cutoff(const KernelSpec& kernel, Cutoff cut, double x, double y) {
  const double k = kernel.evaluate(x, y);
  return (cut.is_active(x) && cut.is_active(y)) ? k : 0.0;
}

}  // namespace gelkit
