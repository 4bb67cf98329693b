#include "fraccalc/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fraccalc {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kMaxGammaArg = 171.61447887182298;
constexpr double kLogSqrtTwoPi = 0.91893853320467274178;
constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(fn) + ": argument must be positive and finite, got " +
                            std::to_string(x));
  }
}

// Series sum_{k>=0} x^k / (a (a+1) ... (a+k)); converges for every x but is
// used only for x < a + 1.
SpecialValue incomplete_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < 10000; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  const double pref = std::exp(a * std::log(x) - x);
  return {pref * sum, pref * (std::abs(term) + 8.0 * kEps * sum)};
}

// Upper incomplete gamma by modified Lentz continued fraction, x >= a + 1.
SpecialValue upper_incomplete_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  double delta = 0.0;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  const double pref = std::exp(a * std::log(x) - x);
  return {pref * h, pref * std::abs(h) * (std::abs(delta - 1.0) + 8.0 * kEps)};
}

}  // namespace

double gamma(double x) {
  require_positive(x, "gamma");
  if (x > kMaxGammaArg) {
    throw std::domain_error("gamma: argument overflows double, got " + std::to_string(x));
  }
  if (x < 0.5) return gamma(x + 1.0) / x;
  const double z = x - 1.0;
  double acc = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) {
    acc += kLanczosCoeff[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  // Split the power so t^(z+1/2) cannot overflow before e^-t scales it down.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * acc;
}

SpecialValue gamma_value(double x) {
  const double v = gamma(x);
  return {v, std::abs(v) * 1e-14 * (1.0 + std::abs(x) / 10.0)};
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  if (x < 15.0) return std::log(gamma(x));
  const double z = x - 1.0;
  double acc = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) {
    acc += kLanczosCoeff[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return kLogSqrtTwoPi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

double beta(double a, double b) {
  require_positive(a, "beta");
  require_positive(b, "beta");
  const double s = a + b;
  if (s < 150.0 && a > 1e-3 && b > 1e-3) return gamma(a) * gamma(b) / gamma(s);
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(s));
}

SpecialValue lower_incomplete_gamma_value(double alpha, double x) {
  require_positive(alpha, "lower_incomplete_gamma");
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error("lower_incomplete_gamma: x must be finite and non-negative, got " +
                            std::to_string(x));
  }
  if (x == 0.0) return {0.0, 0.0};
  if (x < alpha + 1.0) return incomplete_series(alpha, x);
  const SpecialValue full = gamma_value(alpha);
  const SpecialValue upper = upper_incomplete_cf(alpha, x);
  return {full.value - upper.value, full.abs_err_bound + upper.abs_err_bound};
}

double lower_incomplete_gamma(double alpha, double x) {
  return lower_incomplete_gamma_value(alpha, x).value;
}

double gamma_ratio(double num, double den) {
  require_positive(num, "gamma_ratio");
  if (den > 0.0) return std::exp(log_gamma(num) - log_gamma(den));
  if (den > -1.0 && den < 0.0) {
    // Gamma(den) = Gamma(den + 1) / den, negative on (-1, 0).
    return den * std::exp(log_gamma(num) - log_gamma(den + 1.0));
  }
  throw std::domain_error("gamma_ratio: denominator at or beyond a gamma pole, got " +
                          std::to_string(den));
}

}  // namespace fraccalc
