#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fraccalc/function.hpp"
#include "fraccalc/function_space.hpp"
#include "fraccalc/quadrature.hpp"

namespace fraccalc {

using ParamValue = std::variant<double, std::string>;

/// Outcome of a property check. `passed` is always residual <= tolerance;
/// `converged` records whether every underlying evaluation met its own
/// tolerance and is informational.
struct CheckReport {
  std::string name;
  std::map<std::string, ParamValue> parameters;
  double residual = 0.0;
  double tolerance = 0.0;
  std::optional<double> constant;
  bool passed = false;
  bool converged = true;

  /// Flat JSON object, numbers with 17 significant digits, non-finite
  /// numbers as null.
  std::string to_json() const;
};

/// Boundedness constant for the generalized integral on X^p_c(a, b), rho >= c:
///   K = b^(alpha(rho+1)-1) / Gamma(alpha)
///       * int_1^(b/a) u^(c - alpha(rho+1) - 1) ((u^(rho+1) - 1)/(rho+1))^(alpha-1) du.
/// The substitution v = u^(rho+1) - 1 moves the (u-1)^(alpha-1) endpoint
/// behaviour into the singular quadrature weight.
EvalResult bound_constant_K(double alpha, double rho, double c, double a, double b,
                            const QuadratureConfig& cfg = {});

/// The L^p constant with the prefactor b^(alpha(rho+1)) as commonly quoted,
/// i.e. b * bound_constant_K(alpha, rho, 1/p, a, b).
EvalResult bound_constant_K1(double alpha, double rho, double p, double a, double b,
                             const QuadratureConfig& cfg = {});

/// Hadamard-type constant: (log(b/a))^alpha / Gamma(alpha+1) for rho = c, and
/// (rho-c)^-alpha gamma(alpha, (rho-c) log(b/a)) / Gamma(alpha) for rho > c.
double hadamard_bound_constant(double alpha, double rho, double c, double a, double b);

/// ||I^alpha f||_{X^p_c} <= K ||f||_{X^p_c} with the operator based at sp.a.
/// Residual max(0, lhs - K rhs); default tolerance 1e-8 K ||f||. K is smaller
/// than the operator norm in general (f = 1, alpha = 1/2, rho = c = 0, sup norm
/// on [1, 2] gives lhs 2/sqrt(pi) against K = 1/sqrt(pi)), so the report also
/// carries b_scaled_constant = b K and b_scaled_residual, the bound with
/// prefactor b^(alpha(rho+1)), which does hold.
CheckReport check_norm_bound(const RealFunction& f, double alpha, double rho,
                             const SpaceParams& sp, const QuadratureConfig& cfg = {},
                             std::optional<double> tolerance = std::nullopt);

/// max over x_grid of |I^alpha (I^beta f)(x) - I^(alpha+beta) f(x)|, the inner
/// operator evaluated pointwise on the outer quadrature nodes.
CheckReport check_semigroup(const RealFunction& f, double alpha, double beta, double rho,
                            double a, std::span<const double> x_grid,
                            const QuadratureConfig& cfg = {}, double tolerance = 1e-6);

/// Iterated n-fold integral by nested quadrature in t against the order-n
/// kernel form, n in {2, 3}.
CheckReport check_nfold_identity(const RealFunction& f, int n, double rho, double a, double x,
                                 const QuadratureConfig& cfg = {}, double tolerance = 1e-7);

/// Residuals |I^alpha_{rho=-1+eps} f(x) - Hadamard f(x)| over decreasing eps.
/// Residual is the last one, or +inf when the sequence increases anywhere.
CheckReport check_hadamard_limit(const RealFunction& f, double alpha, double a, double x,
                                 std::span<const double> eps_list,
                                 const QuadratureConfig& cfg = {}, double tolerance = 1e-3);

/// Formats a double with 17 significant digits (JSON null when non-finite).
std::string json_number(double v);
/// Quotes and escapes a string for JSON.
std::string json_string(const std::string& s);

}  // namespace fraccalc
