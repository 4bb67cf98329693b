#include "fraccalc/operators.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraccalc/special_functions.hpp"

namespace fraccalc {

void OperatorSpec::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("operator order alpha must be positive, got " + std::to_string(alpha));
  }
  if (const auto* g = std::get_if<Generalized>(&mode); g && !(g->rho > -1.0)) {
    throw std::domain_error("generalized mode requires rho > -1, got " + std::to_string(g->rho));
  }
  if (kind != OperatorKind::Integral) {
    if (std::holds_alternative<Hadamard>(mode)) {
      throw std::domain_error("Hadamard mode is available for integrals only");
    }
    if (alpha == std::floor(alpha)) {
      throw std::domain_error("derivatives require non-integer alpha, got " +
                              std::to_string(alpha));
    }
    if (alpha > 3.0) {
      throw std::domain_error("derivatives support ceil(alpha) <= 3, got " +
                              std::to_string(alpha));
    }
  }
}

int OperatorSpec::derivative_order() const { return static_cast<int>(std::ceil(alpha)); }

namespace {

void check_order(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("order alpha must be positive, got " + std::to_string(alpha));
  }
}

void check_rho(double rho) {
  if (!(rho > -1.0) || !std::isfinite(rho)) {
    throw std::domain_error("rho must exceed -1, got " + std::to_string(rho));
  }
}

int derivative_order_checked(double alpha) {
  check_order(alpha);
  if (alpha == std::floor(alpha) || alpha > 3.0) {
    throw std::domain_error("derivative order must be non-integer with ceil(alpha) <= 3, got " +
                            std::to_string(alpha));
  }
  return static_cast<int>(std::ceil(alpha));
}

// One routine for both sides. With s = t^(rho+1) the left integral becomes
// (rho+1)^-alpha / Gamma(alpha) * int_{a^(rho+1)}^{x^(rho+1)} (X - s)^(alpha-1) f(s^(1/(rho+1))) ds
// and the right one is its mirror with the singular end at the lower limit.
EvalResult generalized_integral(const RealFunction& f, double alpha, double rho, double lo_t,
                                double hi_t, Side side, const QuadratureConfig& cfg) {
  const double e = rho + 1.0;
  const double inv_e = 1.0 / e;
  const std::function<double(double)> g = [&f, inv_e](double s) {
    return f(std::pow(s, inv_e));
  };
  const double lo = std::pow(lo_t, e);
  const double hi = std::pow(hi_t, e);
  EvalResult r = integrate_singular(g, lo, hi, alpha, cfg,
                                    side == Side::Left ? SingularEnd::Upper : SingularEnd::Lower);
  const double pref = std::exp(-alpha * std::log(e) - log_gamma(alpha));
  r.value *= pref;
  r.err_estimate *= pref;
  return r;
}

EvalResult log_integral(const RealFunction& f, double alpha, double lo_t, double hi_t, Side side,
                        const QuadratureConfig& cfg) {
  const std::function<double(double)> g = [&f](double s) { return f(std::exp(s)); };
  EvalResult r = integrate_singular(g, std::log(lo_t), std::log(hi_t), alpha, cfg,
                                    side == Side::Left ? SingularEnd::Upper : SingularEnd::Lower);
  const double pref = 1.0 / gamma(alpha);
  r.value *= pref;
  r.err_estimate *= pref;
  return r;
}

// Finite-difference weights for the n-th derivative on integer offsets
// (Fornberg's recursion), unit spacing.
std::vector<double> fd_weights(const std::vector<double>& offsets, int n) {
  const std::size_t len = offsets.size();
  std::vector<std::vector<double>> c(len, std::vector<double>(n + 1, 0.0));
  double c1 = 1.0;
  double c4 = offsets[0];
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < len; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), n);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = offsets[i];
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = offsets[i] - offsets[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(len);
  for (std::size_t i = 0; i < len; ++i) w[i] = c[i][n];
  return w;
}

enum class Stencil { Central, Forward, Backward };

// n-th derivative of F at x: five-point stencil at steps h0, h0/2, h0/4 and
// a Richardson table on top. `lower`/`upper` bound where F may be evaluated
// (exclusive), and pick a one-sided stencil when the central one does not fit.
template <typename F>
EvalResult richardson_derivative(F&& eval, double x, int n, double h0, double lower,
                                 double upper, const QuadratureConfig& cfg) {
  Stencil stencil = Stencil::Central;
  double h = h0;
  if (!(x - 2 * h > lower && x + 2 * h < upper)) {
    if (x + 4 * h < upper && x >= lower) {
      stencil = Stencil::Forward;
    } else if (x - 4 * h > lower && x <= upper) {
      stencil = Stencil::Backward;
    } else {
      h = 0.45 * std::min(x - lower, upper - x);
    }
  }
  std::vector<double> offsets;
  switch (stencil) {
    case Stencil::Central: offsets = {-2, -1, 0, 1, 2}; break;
    case Stencil::Forward: offsets = {0, 1, 2, 3, 4}; break;
    case Stencil::Backward: offsets = {0, -1, -2, -3, -4}; break;
  }
  const std::vector<double> w = fd_weights(offsets, n);
  // Leading truncation power and the spacing of later powers.
  const int lead = stencil == Stencil::Central ? 2 * ((5 - n + 1) / 2) : 5 - n;
  const int step = stencil == Stencil::Central ? 2 : 1;

  EvalResult out;
  out.one_sided_stencil = stencil != Stencil::Central;
  out.nodes_used = 0;
  bool inner_ok = true;
  constexpr int kLevels = 3;
  std::array<std::array<double, kLevels>, kLevels> table{};
  for (int level = 0; level < kLevels; ++level) {
    const double hl = h / (1 << level);
    double acc = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      if (w[i] == 0.0) continue;
      const EvalResult r = eval(x + offsets[i] * hl);
      out.nodes_used += r.nodes_used;
      inner_ok = inner_ok && r.converged;
      acc += w[i] * r.value;
    }
    table[level][0] = acc / std::pow(hl, n);
    for (int j = 1; j <= level; ++j) {
      const double factor = std::pow(2.0, lead + step * (j - 1)) - 1.0;
      table[level][j] = table[level][j - 1] + (table[level][j - 1] - table[level - 1][j - 1]) / factor;
    }
  }
  out.value = table[kLevels - 1][kLevels - 1];
  out.err_estimate = std::abs(out.value - table[kLevels - 2][kLevels - 2]);
  const double tol = std::max(std::sqrt(cfg.abs_tol), cfg.diff_rel_tol * std::abs(out.value));
  out.converged = inner_ok && out.err_estimate <= tol;
  return out;
}

// The stencil divides inner-integral errors by h^n, so those integrals run at a
// tighter tolerance than the caller asked for.
QuadratureConfig inner_config(const QuadratureConfig& cfg) {
  QuadratureConfig inner = cfg;
  inner.rel_tol = std::min(cfg.rel_tol, 1e-13);
  inner.abs_tol = std::min(cfg.abs_tol, 1e-15);
  return inner;
}

double initial_step(double x, double distance) {
  return std::max(1e-3 * std::max(std::abs(x), 1.0), distance / 10.0);
}

}  // namespace

EvalResult gfi_left(const RealFunction& f, double alpha, double rho, double a, double x,
                    const QuadratureConfig& cfg) {
  check_order(alpha);
  check_rho(rho);
  if (!(a >= 0.0)) throw std::domain_error("gfi_left: base a must be non-negative");
  if (!(x > a)) throw std::domain_error("gfi_left: need x > a");
  return generalized_integral(f, alpha, rho, a, x, Side::Left, cfg);
}

EvalResult gfi_right(const RealFunction& f, double alpha, double rho, double b, double x,
                     const QuadratureConfig& cfg) {
  check_order(alpha);
  check_rho(rho);
  if (!(x >= 0.0)) throw std::domain_error("gfi_right: need x >= 0");
  if (!(x < b)) throw std::domain_error("gfi_right: need x < b");
  return generalized_integral(f, alpha, rho, x, b, Side::Right, cfg);
}

EvalResult hadamard_integral(const RealFunction& f, double alpha, double a, double x,
                             const QuadratureConfig& cfg) {
  check_order(alpha);
  if (!(a > 0.0)) throw std::domain_error("hadamard_integral: base a must be positive");
  if (!(x > a)) throw std::domain_error("hadamard_integral: need x > a");
  return log_integral(f, alpha, a, x, Side::Left, cfg);
}

EvalResult hadamard_integral_right(const RealFunction& f, double alpha, double b, double x,
                                   const QuadratureConfig& cfg) {
  check_order(alpha);
  if (!(x > 0.0)) throw std::domain_error("hadamard_integral_right: need x > 0");
  if (!(x < b)) throw std::domain_error("hadamard_integral_right: need x < b");
  return log_integral(f, alpha, x, b, Side::Right, cfg);
}

EvalResult gfd_riemann_left(const RealFunction& f, double alpha, double rho, double a, double x,
                            const QuadratureConfig& cfg) {
  const int n = derivative_order_checked(alpha);
  check_rho(rho);
  if (!(a >= 0.0)) throw std::domain_error("gfd_riemann_left: base a must be non-negative");
  if (!(x > a)) throw std::domain_error("gfd_riemann_left: need x > a");
  const double order = n - alpha;
  const QuadratureConfig icfg = inner_config(cfg);
  auto inner = [&](double y) { return gfi_left(f, order, rho, a, y, icfg); };
  return richardson_derivative(inner, x, n, initial_step(x, x - a), a,
                               std::numeric_limits<double>::infinity(), cfg);
}

EvalResult gfd_riemann_right(const RealFunction& f, double alpha, double rho, double b, double x,
                             const QuadratureConfig& cfg) {
  const int n = derivative_order_checked(alpha);
  check_rho(rho);
  if (!(x >= 0.0)) throw std::domain_error("gfd_riemann_right: need x >= 0");
  if (!(x < b)) throw std::domain_error("gfd_riemann_right: need x < b");
  const double order = n - alpha;
  const QuadratureConfig icfg = inner_config(cfg);
  auto inner = [&](double y) { return gfi_right(f, order, rho, b, y, icfg); };
  // The power substitution needs y >= 0; F(b) = 0 is never sampled.
  EvalResult r = richardson_derivative(inner, x, n, initial_step(x, b - x), 0.0, b, cfg);
  if (n % 2 == 1) r.value = -r.value;
  return r;
}

EvalResult gfd_caputo_left(const RealFunction& f, double alpha, double rho, double a, double x,
                           const QuadratureConfig& cfg) {
  const int n = derivative_order_checked(alpha);
  const auto dn = f.derivative(n);
  if (!dn) {
    throw std::invalid_argument("Caputo derivative needs the analytic derivative of order " +
                                std::to_string(n) + " of '" + f.descriptor() + "'");
  }
  return gfi_left(*dn, n - alpha, rho, a, x, cfg);
}

EvalResult gfd_caputo_right(const RealFunction& f, double alpha, double rho, double b, double x,
                            const QuadratureConfig& cfg) {
  const int n = derivative_order_checked(alpha);
  const auto dn = f.derivative(n);
  if (!dn) {
    throw std::invalid_argument("Caputo derivative needs the analytic derivative of order " +
                                std::to_string(n) + " of '" + f.descriptor() + "'");
  }
  EvalResult r = gfi_right(*dn, n - alpha, rho, b, x, cfg);
  if (n % 2 == 1) r.value = -r.value;
  return r;
}

EvalResult apply(const RealFunction& f, const OperatorSpec& spec, double x,
                 const QuadratureConfig& cfg) {
  spec.validate();
  const bool left = spec.side == Side::Left;
  if (std::holds_alternative<Hadamard>(spec.mode)) {
    return left ? hadamard_integral(f, spec.alpha, spec.base, x, cfg)
                : hadamard_integral_right(f, spec.alpha, spec.base, x, cfg);
  }
  const double rho = std::get<Generalized>(spec.mode).rho;
  switch (spec.kind) {
    case OperatorKind::Integral:
      return left ? gfi_left(f, spec.alpha, rho, spec.base, x, cfg)
                  : gfi_right(f, spec.alpha, rho, spec.base, x, cfg);
    case OperatorKind::RiemannDerivative:
      return left ? gfd_riemann_left(f, spec.alpha, rho, spec.base, x, cfg)
                  : gfd_riemann_right(f, spec.alpha, rho, spec.base, x, cfg);
    case OperatorKind::CaputoDerivative:
      return left ? gfd_caputo_left(f, spec.alpha, rho, spec.base, x, cfg)
                  : gfd_caputo_right(f, spec.alpha, rho, spec.base, x, cfg);
  }
  throw std::logic_error("unreachable operator kind");
}

namespace {

void check_power_args(double nu, double alpha, double rho, double x) {
  check_order(alpha);
  check_rho(rho);
  if (!(nu > -(rho + 1.0))) throw std::domain_error("power rule requires nu > -(rho + 1)");
  if (!(x > 0.0)) throw std::domain_error("power rule requires x > 0");
}

}  // namespace

double power_rule_closed_form(double nu, double alpha, double rho, double x) {
  check_power_args(nu, alpha, rho, x);
  if (!(alpha < 1.0)) throw std::domain_error("power rule requires 0 < alpha < 1");
  const double e = rho + 1.0;
  const double z = nu / e + 1.0;
  return std::pow(e, alpha) * gamma_ratio(z, z - alpha) * std::pow(x, nu + e * (1.0 - alpha) - 1.0);
}

double power_rule_as_printed(double nu, double alpha, double rho, double x) {
  return power_rule_closed_form(nu, alpha, rho, x) / (rho + 1.0);
}

double power_integral_closed_form(double nu, double alpha, double rho, double x) {
  check_power_args(nu, alpha, rho, x);
  const double e = rho + 1.0;
  const double z = (nu + e) / e;
  return std::pow(e, -alpha) * gamma_ratio(z, z + alpha) * std::pow(x, nu + alpha * e);
}

}  // namespace fraccalc
