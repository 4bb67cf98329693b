#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace fraccalc {

/// Tolerances and budgets for every quadrature-backed evaluation.
struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Upper bound on integrand evaluations for a single integral.
  int max_nodes = 4096;
  int base_rule_order = 32;
  /// Relative tolerance for Richardson-extrapolated derivatives, whose noise
  /// floor sits several orders above the quadrature tolerance.
  double diff_rel_tol = 1e-6;

  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;
};

/// Value of a numerical evaluation with its error estimate and cost.
struct EvalResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long nodes_used = 0;
  bool converged = true;
  /// Set by finite-difference derivatives that could not centre the stencil.
  bool one_sided_stencil = false;
};

/// Raised when the integrand returns a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureNode {
  double node;
  double weight;
};

/// Gauss rule for the weight (1 - y)^exponent on (0, 1), nodes ascending.
/// Exact for polynomials of degree <= 2 order - 1.
std::vector<QuadratureNode> jacobi_nodes(int order, double exponent);

/// Shared immutable copy of jacobi_nodes, computed once per (order, exponent).
std::shared_ptr<const std::vector<QuadratureNode>> cached_jacobi_rule(int order, double exponent);

/// Which endpoint carries the algebraic kernel singularity.
enum class SingularEnd { Upper, Lower };

/// Integral over [lo, hi] of k(s) g(s), where k(s) = (hi - s)^(alpha - 1) for
/// SingularEnd::Upper and (s - lo)^(alpha - 1) for SingularEnd::Lower.
///
/// The interval is mapped onto (0, 1) with the singular end at 1 and a
/// Gauss-Jacobi rule absorbs the kernel. When the orders m and 2m disagree,
/// panels are refined: graded by halves toward the singular end, graded
/// geometrically toward the regular end (where g itself may have an
/// algebraic endpoint singularity, e.g. after a power substitution) and
/// bisected in the interior. Interior panels use Gauss-Legendre.
///
/// g is never evaluated at lo or hi. Exhausting cfg.max_nodes returns the
/// best estimate with converged = false. A non-finite g throws EvaluationError.
EvalResult integrate_singular(const std::function<double(double)>& g, double lo, double hi,
                              double alpha, const QuadratureConfig& cfg,
                              SingularEnd end = SingularEnd::Upper);

/// Plain integral of g over [lo, hi] (alpha = 1 in integrate_singular).
EvalResult integrate(const std::function<double(double)>& g, double lo, double hi,
                     const QuadratureConfig& cfg);

}  // namespace fraccalc
