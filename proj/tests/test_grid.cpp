#include <doctest.h>

#include <cstring>
#include <stdexcept>
#include <vector>

#include "fraccalc/grid.hpp"
#include "fraccalc/operators.hpp"

using namespace fraccalc;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("parallel grid equals the serial reference bit for bit") {
  const RealFunction f = RealFunction::parse("scaled:0.5,exp");
  std::vector<double> xs;
  for (int i = 1; i <= 40; ++i) xs.push_back(0.05 * i);
  const PointEvaluator op = [&](double x) { return gfd_riemann_left(f, 0.6, 0.4, 0.0, x); };
  const auto par = evaluate_grid(op, xs);
  const auto ser = evaluate_grid_ref(op, xs);
  REQUIRE(par.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(same_bits(par[i].value, ser[i].value));
    CHECK(same_bits(par[i].err_estimate, ser[i].err_estimate));
    CHECK(par[i].nodes_used == ser[i].nodes_used);
    CHECK(par[i].converged == ser[i].converged);
  }
}

TEST_CASE("parallel map keeps order") {
  const auto out = parallel_map(1000, [](std::size_t i) { return static_cast<double>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<double>(i * i));
  CHECK(parallel_map(0, [](std::size_t) { return 1.0; }).empty());
  CHECK(max_threads() >= 1);
}

TEST_CASE("exceptions inside the parallel region reach the caller") {
  const std::vector<double> xs{0.5, 1.0, 1.5, 2.0};
  const PointEvaluator op = [](double x) -> EvalResult {
    if (x > 1.2) throw std::domain_error("bad point");
    return {x, 0.0, 1, true, false};
  };
  CHECK_THROWS_AS(evaluate_grid(op, xs), std::domain_error);
  CHECK_THROWS_AS(evaluate_grid_ref(op, xs), std::domain_error);
  CHECK_THROWS_AS(parallel_map(10, [](std::size_t i) -> double {
                    if (i == 7) throw std::runtime_error("seven");
                    return 0.0;
                  }),
                  std::runtime_error);
}
