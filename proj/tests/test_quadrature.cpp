#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fraccalc/quadrature.hpp"
#include "oracles.hpp"

using namespace fraccalc;

namespace {

double rel(double got, long double want) {
  return static_cast<double>(std::abs((got - want) / want));
}

// int_0^1 (1-s)^(alpha-1) sum c_k s^k ds = sum c_k B(k+1, alpha)
long double beta_expansion(const std::vector<double>& c, double alpha) {
  long double acc = 0.0L;
  for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * oracle::beta(k + 1.0L, alpha);
  return acc;
}

}  // namespace

TEST_CASE("jacobi rule trivial orders") {
  const auto mid = jacobi_nodes(1, 0.0);
  REQUIRE(mid.size() == 1);
  CHECK(mid[0].node == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mid[0].weight == doctest::Approx(1.0).epsilon(1e-15));

  for (const double alpha : {0.1, 0.5, 0.9, 2.5}) {
    const auto r = jacobi_nodes(1, alpha - 1.0);
    CHECK(r[0].weight == doctest::Approx(1.0 / alpha).epsilon(1e-14));
    // Exact for linear polynomials: node is the first moment ratio 1/(alpha+1).
    CHECK(r[0].node == doctest::Approx(1.0 / (alpha + 1.0)).epsilon(1e-14));
  }
}

TEST_CASE("jacobi rule against beta moments") {
  const auto r = jacobi_nodes(8, -0.5);
  long double q = 0.0L;
  for (const auto& n : r) q += n.weight * std::pow(static_cast<long double>(n.node), 3);
  CHECK(rel(static_cast<double>(q), 32.0L / 35.0L) <= 1e-12);

  for (const int order : {1, 2, 5, 16, 32, 64}) {
    for (const double e : {-0.9, -0.5, 0.0, 0.3, 1.7}) {
      const auto rule = jacobi_nodes(order, e);
      REQUIRE(rule.size() == static_cast<std::size_t>(order));
      for (std::size_t i = 0; i < rule.size(); ++i) {
        CHECK(rule[i].node > 0.0);
        CHECK(rule[i].node < 1.0);
        CHECK(rule[i].weight > 0.0);
        if (i > 0) CHECK(rule[i].node > rule[i - 1].node);
      }
      for (int k = 0; k <= 2 * order - 1; k += std::max(1, order / 4)) {
        long double acc = 0.0L;
        for (const auto& n : rule) acc += n.weight * std::pow(static_cast<long double>(n.node), k);
        CHECK(rel(static_cast<double>(acc), oracle::beta(k + 1.0L, e + 1.0L)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("jacobi rule domain") {
  CHECK_THROWS_AS(jacobi_nodes(4, -1.0), std::domain_error);
  CHECK_THROWS_AS(jacobi_nodes(0, 0.0), std::domain_error);
}

TEST_CASE("cached rules are shared") {
  const auto a = cached_jacobi_rule(32, -0.25);
  const auto b = cached_jacobi_rule(32, -0.25);
  CHECK(a.get() == b.get());
  CHECK(a->size() == 32);
}

TEST_CASE("config validation") {
  QuadratureConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.max_nodes = 16;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.abs_tol = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("integrate_singular examples") {
  const QuadratureConfig cfg;
  const auto one = [](double) { return 1.0; };
  EvalResult r = integrate_singular(one, 0.0, 1.0, 1.0, cfg);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
  r = integrate_singular(one, 0.0, 1.0, 0.5, cfg);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-14));
  r = integrate_singular([](double s) { return s * s; }, 0.0, 1.0, 0.5, cfg);
  CHECK(rel(r.value, 16.0L / 15.0L) < 1e-13);
  CHECK(r.nodes_used > 0);
  CHECK(r.err_estimate >= 0.0);
}

TEST_CASE("lower singular end is the mirror image") {
  const QuadratureConfig cfg;
  const auto g = [](double s) { return std::exp(s); };
  const EvalResult up = integrate_singular([&](double s) { return g(3.0 - s); }, 1.0, 2.0, 0.4, cfg);
  const EvalResult low = integrate_singular(g, 1.0, 2.0, 0.4, cfg, SingularEnd::Lower);
  CHECK(rel(low.value, up.value) < 1e-13);
  const long double want = oracle::tanh_sinh(
      [](long double s, long double dl, long double) { return std::pow(dl, -0.6L) * std::exp(s); },
      1.0L, 2.0L);
  CHECK(rel(low.value, want) < 1e-12);
}

TEST_CASE("polynomial exactness") {
  const QuadratureConfig cfg;
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ua(0.05, 3.0);
  std::uniform_int_distribution<int> udeg(0, 2 * cfg.base_rule_order - 1);
  for (int trial = 0; trial < 40; ++trial) {
    const double alpha = ua(rng);
    const auto c = oracle::random_coeffs(rng, udeg(rng));
    const EvalResult r = integrate_singular(
        [&](double s) { return static_cast<double>(oracle::eval_poly(c, s)); }, 0.0, 1.0, alpha,
        cfg);
    const long double want = beta_expansion(c, alpha);
    CHECK(std::abs(r.value - want) <= 1e-11 * std::abs(want) + 1e-15);
  }
}

TEST_CASE("scaling covariance") {
  const QuadratureConfig cfg;
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> ua(0.1, 2.0);
  std::uniform_real_distribution<double> ul(0.25, 8.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double alpha = ua(rng);
    const double lambda = ul(rng);
    const double hi = 1.5;
    const auto g = [](double s) { return std::cos(s) + s * s; };
    const EvalResult base = integrate_singular(g, 0.0, hi, alpha, cfg);
    // int_0^{hi/l} (hi/l - u)^(alpha-1) g(l u) du * l^alpha
    const EvalResult scaled =
        integrate_singular([&](double u) { return g(lambda * u); }, 0.0, hi / lambda, alpha, cfg);
    CHECK(rel(scaled.value * std::pow(lambda, alpha), base.value) <= 1e-12);
  }
}

TEST_CASE("error estimates are honest on a smooth suite") {
  // 50 integrands with reference values from the double-exponential oracle.
  const QuadratureConfig cfg;
  struct Case {
    double alpha;
    double lo, hi;
    std::function<long double(long double)> g;
  };
  std::vector<Case> cases;
  const double alphas[] = {0.1, 0.3, 0.5, 0.75, 1.0, 1.4, 2.2, 3.0, 0.05, 0.9};
  for (int i = 0; i < 10; ++i) {
    const double a = alphas[i];
    cases.push_back({a, 0.0, 1.0, [](long double s) { return std::exp(s); }});
    cases.push_back({a, 0.5, 2.0, [](long double s) { return std::sin(3.0L * s); }});
    cases.push_back({a, 1.0, 4.0, [](long double s) { return 1.0L / (1.0L + s * s); }});
    cases.push_back({a, 0.0, 2.0, [](long double s) { return std::cos(s) * std::exp(-s); }});
    cases.push_back({a, 0.2, 0.9, [](long double s) { return std::log(s); }});
  }
  REQUIRE(cases.size() == 50);
  int honest = 0;
  for (const auto& c : cases) {
    const EvalResult r = integrate_singular(
        [&](double s) { return static_cast<double>(c.g(s)); }, c.lo, c.hi, c.alpha, cfg);
    const long double want = oracle::tanh_sinh(
        [&](long double s, long double, long double dh) {
          return std::pow(dh, static_cast<long double>(c.alpha) - 1.0L) * c.g(s);
        },
        c.lo, c.hi);
    const double err = static_cast<double>(std::abs(r.value - want));
    if (r.err_estimate >= err) ++honest;
    if (r.converged) CHECK(err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)));
  }
  CHECK(honest >= 48);
}

TEST_CASE("endpoint singularity of g at the regular end") {
  const QuadratureConfig cfg;
  const EvalResult r =
      integrate_singular([](double s) { return std::pow(s, 0.3); }, 0.0, 1.0, 0.5, cfg);
  CHECK(r.converged);
  CHECK(rel(r.value, oracle::beta(1.3L, 0.5L)) < 1e-10);
  // A strong singularity of g may exhaust the budget but stays close.
  const EvalResult q =
      integrate_singular([](double s) { return std::pow(s, -0.6); }, 0.0, 1.0, 0.7, cfg);
  const double err = std::abs(q.value - static_cast<double>(oracle::beta(0.4L, 0.7L)));
  CHECK(err < 1e-7);
  if (q.converged) CHECK(err <= cfg.rel_tol * q.value);
}

TEST_CASE("non-convergence is reported, not thrown") {
  QuadratureConfig cfg;
  cfg.max_nodes = 64;
  cfg.base_rule_order = 8;
  const EvalResult r = integrate_singular(
      [](double s) { return std::abs(s - 0.3141) + std::sin(40.0 * s); }, 0.0, 1.0, 0.5, cfg);
  CHECK_FALSE(r.converged);
  CHECK(std::isfinite(r.value));
  CHECK(r.nodes_used <= cfg.max_nodes);
}

TEST_CASE("non-finite integrand raises an evaluation error") {
  const QuadratureConfig cfg;
  CHECK_THROWS_AS(integrate_singular([](double) { return NAN; }, 0.0, 1.0, 0.5, cfg),
                  EvaluationError);
  CHECK_THROWS_AS(integrate([](double s) { return s > 0.5 ? INFINITY : 1.0; }, 0.0, 1.0, cfg),
                  EvaluationError);
}

TEST_CASE("endpoints are never evaluated") {
  const QuadratureConfig cfg;
  const EvalResult r = integrate_singular(
      [](double s) {
        REQUIRE(s > 0.0);
        REQUIRE(s < 1.0);
        return 1.0 / std::sqrt(s);
      },
      0.0, 1.0, 0.25, cfg);
  CHECK(rel(r.value, oracle::beta(0.5L, 0.25L)) < 1e-9);
}

TEST_CASE("domain errors") {
  const QuadratureConfig cfg;
  CHECK_THROWS_AS(integrate_singular([](double) { return 1.0; }, 1.0, 1.0, 0.5, cfg),
                  std::domain_error);
  CHECK_THROWS_AS(integrate_singular([](double) { return 1.0; }, 0.0, 1.0, 0.0, cfg),
                  std::domain_error);
}
