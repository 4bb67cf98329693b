#include "fraccalc/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <utility>

namespace fraccalc {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(diff_rel_tol > 0.0)) {
    throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
  }
  if (base_rule_order < 1) {
    throw std::invalid_argument("QuadratureConfig: base_rule_order must be positive");
  }
  if (max_nodes < base_rule_order) {
    throw std::invalid_argument("QuadratureConfig: max_nodes must be >= base_rule_order");
  }
}

namespace {

// P_n^{(a,0)} and P_{n-1}^{(a,0)} at x by the three-term recurrence. Extended
// precision keeps the weights accurate near x = 1, where (1-x)^a is singular.
std::pair<long double, long double> jacobi_poly(int n, long double a, long double x) {
  long double p_prev = 1.0L;
  long double p = 0.5L * ((a + 2.0L) * x + a);
  if (n == 0) return {1.0L, 0.0L};
  for (int k = 2; k <= n; ++k) {
    const long double c = 2.0L * k + a;
    const long double next = ((c - 1.0L) * (c * (c - 2.0L) * x + a * a) * p -
                              2.0L * (k + a - 1.0L) * (k - 1.0L) * c * p_prev) /
                             (2.0L * k * (k + a) * (c - 2.0L));
    p_prev = p;
    p = next;
  }
  return {p, p_prev};
}

// (1 - x^2) d/dx P_n^{(a,0)}(x).
long double jacobi_poly_scaled_deriv(int n, long double a, long double x, long double pn,
                                     long double pn1) {
  const long double c = 2.0L * n + a;
  return (n * (a - c * x) * pn + 2.0L * (n + a) * n * pn1) / c;
}

}  // namespace

std::vector<QuadratureNode> jacobi_nodes(int order, double exponent) {
  if (order < 1) throw std::domain_error("jacobi_nodes: order must be positive");
  if (!(exponent > -1.0)) throw std::domain_error("jacobi_nodes: exponent must exceed -1");
  const double a = exponent;

  // Golub-Welsch on the monic recurrence of the weight (1-x)^a on [-1, 1]
  // supplies starting values; Newton on the polynomial polishes them.
  Eigen::VectorXd diag(order);
  Eigen::VectorXd sub(std::max(order - 1, 1));
  for (int k = 0; k < order; ++k) {
    const double c = 2.0 * k + a;
    diag(k) = k == 0 ? -a / (a + 2.0) : -a * a / (c * (c + 2.0));
  }
  for (int k = 1; k < order; ++k) {
    const double c = 2.0 * k + a;
    const double b2 = k == 1 ? 4.0 * (1.0 + a) / ((2.0 + a) * (2.0 + a) * (3.0 + a))
                             : 4.0 * k * (k + a) * k * (k + a) / (c * c * (c + 1.0) * (c - 1.0));
    sub(k - 1) = std::sqrt(b2);
  }
  Eigen::VectorXd roots(order);
  if (order == 1) {
    roots(0) = diag(0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(order - 1), Eigen::EigenvaluesOnly);
    roots = solver.eigenvalues();
  }

  std::vector<QuadratureNode> rule(order);
  for (int i = 0; i < order; ++i) {
    long double x = roots(i);
    for (int it = 0; it < 10; ++it) {
      auto [pn, pn1] = jacobi_poly(order, a, x);
      const long double d = jacobi_poly_scaled_deriv(order, a, x, pn, pn1) / (1.0L - x * x);
      const long double step = pn / d;
      x -= step;
      if (std::abs(step) < 1e-20L) break;
    }
    auto [pn, pn1] = jacobi_poly(order, a, x);
    const long double one_minus_x2 = (1.0L - x) * (1.0L + x);
    const long double d = jacobi_poly_scaled_deriv(order, a, x, pn, pn1) / one_minus_x2;
    // On (0, 1) the Christoffel weight reduces to 1 / ((1 - x^2) P_n'(x)^2).
    rule[i] = {static_cast<double>(0.5L * (1.0L + x)),
               static_cast<double>(1.0L / (one_minus_x2 * d * d))};
  }
  std::sort(rule.begin(), rule.end(),
            [](const QuadratureNode& l, const QuadratureNode& r) { return l.node < r.node; });
  return rule;
}

std::shared_ptr<const std::vector<QuadratureNode>> cached_jacobi_rule(int order, double exponent) {
  using Key = std::pair<int, double>;
  static std::shared_mutex mutex;
  static std::map<Key, std::shared_ptr<const std::vector<QuadratureNode>>> cache;
  const Key key{order, exponent};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const std::vector<QuadratureNode>>(jacobi_nodes(order, exponent));
  std::unique_lock lock(mutex);
  return cache.try_emplace(key, std::move(rule)).first->second;
}

namespace {

constexpr double kRegularGrading = 0.15;

struct Panel {
  double lo;
  double hi;
  double value;
  double err;
};

class PanelIntegrator {
 public:
  PanelIntegrator(const std::function<double(double)>& g, double alpha, int order)
      : g_(g),
        alpha_(alpha),
        jac_lo_(cached_jacobi_rule(order, alpha - 1.0)),
        jac_hi_(cached_jacobi_rule(2 * order, alpha - 1.0)),
        leg_lo_(cached_jacobi_rule(order, 0.0)),
        leg_hi_(cached_jacobi_rule(2 * order, 0.0)) {}

  Panel evaluate(double p, double q) {
    const bool singular = q == 1.0;
    // (1-y)^(alpha-1) on [p, 1] is (1-p)^alpha (1-z)^(alpha-1) dz.
    const double scale = singular ? std::pow(1.0 - p, alpha_) : q - p;
    const auto& lo_rule = singular ? *jac_lo_ : *leg_lo_;
    const auto& hi_rule = singular ? *jac_hi_ : *leg_hi_;
    const double lo_val = scale * sum(lo_rule, p, q - p, !singular).first;
    const auto [hi_sum, magnitude] = sum(hi_rule, p, q - p, !singular);
    const double hi_val = scale * hi_sum;
    // Rounding in the sum bounds how well the two orders can agree.
    const double rounding = 32.0 * std::numeric_limits<double>::epsilon() * scale * magnitude;
    return {p, q, hi_val, std::abs(hi_val - lo_val) + rounding};
  }

  long evaluations() const { return evaluations_; }

 private:
  // Weighted sum and the sum of absolute terms.
  std::pair<double, double> sum(const std::vector<QuadratureNode>& rule, double origin,
                                double width, bool with_kernel) {
    double acc = 0.0;
    double mag = 0.0;
    for (const auto& [z, w] : rule) {
      const double y = origin + width * z;
      const double v = g_(y);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "integrand is not finite at mapped coordinate y=" << y;
        throw EvaluationError(msg.str());
      }
      const double term = with_kernel ? w * std::pow(1.0 - y, alpha_ - 1.0) * v : w * v;
      acc += term;
      mag += std::abs(term);
    }
    evaluations_ += static_cast<long>(rule.size());
    return {acc, mag};
  }

  const std::function<double(double)>& g_;
  double alpha_;
  std::shared_ptr<const std::vector<QuadratureNode>> jac_lo_, jac_hi_, leg_lo_, leg_hi_;
  long evaluations_ = 0;
};

}  // namespace

EvalResult integrate_singular(const std::function<double(double)>& g, double lo, double hi,
                              double alpha, const QuadratureConfig& cfg, SingularEnd end) {
  cfg.validate();
  if (!(alpha > 0.0)) throw std::domain_error("integrate_singular: alpha must be positive");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::domain_error("integrate_singular: need finite lo < hi");
  }
  const double width = hi - lo;
  const std::function<double(double)> mapped =
      end == SingularEnd::Upper
          ? std::function<double(double)>([&](double y) { return g(lo + width * y); })
          : std::function<double(double)>([&](double y) { return g(hi - width * y); });
  const double scale = std::pow(width, alpha);
  const int m = cfg.base_rule_order;
  const long panel_cost = 3L * m;

  PanelIntegrator integrator(mapped, alpha, m);
  std::vector<Panel> panels{integrator.evaluate(0.0, 1.0)};

  auto totals = [&] {
    double v = 0.0;
    double e = 0.0;
    for (const auto& p : panels) {
      v += p.value;
      e += p.err;
    }
    return std::pair{v * scale, e * scale};
  };
  auto target = [&](double v) { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v)); };

  auto [value, err] = totals();
  bool converged = err <= target(value);
  while (!converged) {
    if (integrator.evaluations() + 2 * panel_cost > cfg.max_nodes) break;
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& l, const Panel& r) { return l.err < r.err; });
    const Panel p = *worst;
    double split;
    if (p.lo == 0.0 && p.hi == 1.0) {
      split = 0.5;
    } else if (p.hi == 1.0) {
      split = p.lo + 0.5 * (1.0 - p.lo);
    } else if (p.lo == 0.0) {
      split = kRegularGrading * p.hi;
    } else {
      split = 0.5 * (p.lo + p.hi);
    }
    if (!(split > p.lo && split < p.hi)) break;
    *worst = integrator.evaluate(p.lo, split);
    panels.push_back(integrator.evaluate(split, p.hi));
    std::tie(value, err) = totals();
    converged = err <= target(value);
  }
  return {value, err, integrator.evaluations(), converged};
}

EvalResult integrate(const std::function<double(double)>& g, double lo, double hi,
                     const QuadratureConfig& cfg) {
  return integrate_singular(g, lo, hi, 1.0, cfg, SingularEnd::Upper);
}

}  // namespace fraccalc
