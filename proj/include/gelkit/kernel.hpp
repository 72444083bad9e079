#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace gelkit {

enum class KernelFamily { Multiplicative, SymmetricAlpha, Aldous };

std::string_view to_string(KernelFamily family);
/// Accepts "multiplicative", "symmetric_alpha", "aldous".
KernelFamily parse_kernel_family(std::string_view name);

/// A strongly gelling coagulation kernel together with the certificate
///   c_lower (x^a y + x y^a) <= K(x,y) <= c_upper (x^a y + x y^a)
/// that makes its majorant safe to use for thinning.
class KernelSpec {
 public:
  static KernelSpec multiplicative();
  static KernelSpec symmetric_alpha(double alpha);
  static KernelSpec aldous(double alpha);
  static KernelSpec make(KernelFamily family, double alpha);

  KernelFamily family() const { return family_; }
  double alpha() const { return alpha_; }
  double c_lower() const { return c_lower_; }
  double c_upper() const { return c_upper_; }

  double evaluate(double x, double y) const;
  /// lim_{y -> inf} K(x,y) / y.
  double limit(double x) const;
  /// c_upper (x^a y + x y^a); never below evaluate(x, y).
  double majorant(double x, double y) const;
  /// c_lower (x^a y + x y^a).
  double minorant(double x, double y) const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  KernelSpec(KernelFamily family, double alpha, double c_lower, double c_upper)
      : family_(family), alpha_(alpha), c_lower_(c_lower), c_upper_(c_upper) {}

  double alpha_form(double x, double y) const;

  KernelFamily family_;
  double alpha_;
  double c_lower_;
  double c_upper_;
};

/// Particles heavier than `a` are inert. A mass equal to `a` is still active.
struct Cutoff {
  double a = std::numeric_limits<double>::infinity();

  static Cutoff none() { return {}; }
  static Cutoff at(double a);

  bool is_active(double mass) const { return mass <= a; }
  bool is_finite() const { return a < std::numeric_limits<double>::infinity(); }

  friend bool operator==(const Cutoff&, const Cutoff&) = default;
};

/// K(x,y) 1{x <= a} 1{y <= a}.
double evaluate_cutoff(const KernelSpec& kernel, Cutoff cut, double x, double y);

}  // namespace gelkit
