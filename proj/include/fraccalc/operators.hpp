#pragma once

#include <variant>

#include "fraccalc/function.hpp"
#include "fraccalc/quadrature.hpp"

namespace fraccalc {

enum class OperatorKind { Integral, RiemannDerivative, CaputoDerivative };
enum class Side { Left, Right };

/// Kernel (x^(rho+1) - t^(rho+1))^(alpha-1) t^rho, rho > -1.
struct Generalized {
  double rho = 0.0;
};
/// Logarithmic kernel (log(x / t))^(alpha-1) / t, the rho -> -1+ limit.
struct Hadamard {};

using KernelMode = std::variant<Generalized, Hadamard>;

/// Full description of one operator application. `base` is the lower
/// terminal a for Side::Left and the upper terminal b for Side::Right.
struct OperatorSpec {
  OperatorKind kind = OperatorKind::Integral;
  Side side = Side::Left;
  double base = 0.0;
  double alpha = 1.0;
  KernelMode mode = Generalized{};

  /// Throws std::domain_error on an inadmissible combination.
  void validate() const;
  /// n = ceil(alpha) for the derivative kinds.
  int derivative_order() const;
};

/// Evaluates the operator described by `spec` on f at x.
EvalResult apply(const RealFunction& f, const OperatorSpec& spec, double x,
                 const QuadratureConfig& cfg = {});

// Generalized fractional integrals. Both reduce through s = t^(rho+1) to a
// single weakly singular integral in s.

EvalResult gfi_left(const RealFunction& f, double alpha, double rho, double a, double x,
                    const QuadratureConfig& cfg = {});
EvalResult gfi_right(const RealFunction& f, double alpha, double rho, double b, double x,
                     const QuadratureConfig& cfg = {});

/// Left-sided Hadamard integral, 0 < a < x; s = log t.
EvalResult hadamard_integral(const RealFunction& f, double alpha, double a, double x,
                             const QuadratureConfig& cfg = {});
/// Right-sided Hadamard integral, 0 < x < b.
EvalResult hadamard_integral_right(const RealFunction& f, double alpha, double b, double x,
                                   const QuadratureConfig& cfg = {});

// Riemann-type derivatives: n-th derivative in x of the order n - alpha
// integral, by central differences with three-level Richardson
// extrapolation. Non-integer alpha with ceil(alpha) <= 3 only.

EvalResult gfd_riemann_left(const RealFunction& f, double alpha, double rho, double a, double x,
                            const QuadratureConfig& cfg = {});
EvalResult gfd_riemann_right(const RealFunction& f, double alpha, double rho, double b, double x,
                             const QuadratureConfig& cfg = {});

// Caputo-type derivatives: order n - alpha integral of the analytic n-th
// derivative. Throws std::invalid_argument when f lacks that derivative.

EvalResult gfd_caputo_left(const RealFunction& f, double alpha, double rho, double a, double x,
                           const QuadratureConfig& cfg = {});
EvalResult gfd_caputo_right(const RealFunction& f, double alpha, double rho, double b, double x,
                            const QuadratureConfig& cfg = {});

/// Riemann-type derivative of t^nu with base 0, 0 < alpha < 1:
/// (rho+1)^alpha Gamma(nu/(rho+1) + 1) / Gamma(nu/(rho+1) + 1 - alpha)
///   * x^(nu + (rho+1)(1-alpha) - 1).
double power_rule_closed_form(double nu, double alpha, double rho, double x);

/// The same power rule with the prefactor (rho+1)^(alpha-1), as it is
/// commonly quoted. Differs from the derivative above by the factor rho+1;
/// kept for reproducing published curves.
double power_rule_as_printed(double nu, double alpha, double rho, double x);

/// Generalized integral of t^nu with base 0:
/// (rho+1)^-alpha Gamma(z) / Gamma(z + alpha) x^(nu + alpha(rho+1)),
/// z = (nu + rho + 1) / (rho + 1).
double power_integral_closed_form(double nu, double alpha, double rho, double x);

}  // namespace fraccalc
