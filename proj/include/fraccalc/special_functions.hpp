#pragma once

// Scalar special functions used by the operator prefactors, the closed-form
// oracles and the boundedness constants. All functions are pure and
// thread-safe. Arguments outside the documented domain throw
// std::domain_error.

namespace fraccalc {

/// A computed value together with a bound on its absolute error.
struct SpecialValue {
  double value = 0.0;
  double abs_err_bound = 0.0;
};

/// Gamma function for x in (0, 171.6]. Lanczos approximation (g = 7, nine
/// terms), relative error below 1e-14 on [0.5, 50].
double gamma(double x);

/// log Gamma(x) for x > 0; finite up to at least 1e300.
double log_gamma(double x);

/// Euler beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
/// Symmetric in its arguments bit for bit.
double beta(double a, double b);

/// Lower incomplete gamma function, integral of t^(alpha-1) e^-t over [0, x].
double lower_incomplete_gamma(double alpha, double x);

/// Same as lower_incomplete_gamma, with the truncation error of the series
/// or continued fraction folded into abs_err_bound.
SpecialValue lower_incomplete_gamma_value(double alpha, double x);

/// Gamma(x) with a conservative rounding bound.
SpecialValue gamma_value(double x);

/// Gamma(num) / Gamma(den) evaluated through log_gamma. Accepts den in
/// (-1, 0) through the recurrence; throws std::domain_error at the pole den = 0.
double gamma_ratio(double num, double den);

}  // namespace fraccalc
