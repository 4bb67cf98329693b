#include "fraccalc/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace fraccalc {

void SpaceParams::validate() const {
  if (!(p >= 1.0)) throw std::domain_error("SpaceParams: p must be in [1, inf]");
  if (!(a > 0.0) || !(b > a) || !std::isfinite(b)) {
    throw std::domain_error("SpaceParams: need 0 < a < b < inf");
  }
  if (!std::isfinite(c)) throw std::domain_error("SpaceParams: c must be finite");
}

EvalResult sampled_sup(const std::function<double(double)>& phi, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::vector<double> t(kSupSamples);
  for (int k = 0; k < kSupSamples; ++k) {
    t[k] = mid - half * std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * kSupSamples));
  }
  long evals = 0;
  auto eval = [&](double s) {
    ++evals;
    const double v = phi(s);
    if (std::isnan(v)) {
      throw EvaluationError("sup sampling hit a NaN at t=" + std::to_string(s));
    }
    return v;
  };
  int best = 0;
  double best_val = -kInfinity;
  for (int k = 0; k < kSupSamples; ++k) {
    const double v = eval(t[k]);
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  if (std::isinf(best_val)) return {best_val, 0.0, evals, true};

  // Golden-section search on the bracket formed by the neighbouring samples
  // (or the interval end when the best sample is outermost).
  double lo = best == 0 ? a : t[best - 1];
  double hi = best == kSupSamples - 1 ? b : t[best + 1];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = eval(x1);
  double f2 = eval(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, std::abs(mid)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = eval(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = eval(x1);
    }
  }
  const double refined = std::max({best_val, f1, f2});
  return {refined, std::abs(f1 - f2), evals, true};
}

namespace {

// (int_a^b phi^p w dt)^(1/p) with phi >= 0. phi is divided by a sampled
// maximum first so that phi^p cannot overflow for large p.
EvalResult power_mean(const std::function<double(double)>& phi,
                      const std::function<double(double)>& w, double p, double a, double b,
                      const QuadratureConfig& cfg) {
  constexpr int kScaleSamples = 33;
  double scale = 0.0;
  for (int k = 0; k < kScaleSamples; ++k) {
    const double t = a + (b - a) * (k + 0.5) / kScaleSamples;
    const double v = phi(t);
    if (std::isfinite(v)) scale = std::max(scale, v);
  }
  if (!(scale > 0.0)) scale = 1.0;
  EvalResult r = integrate([&](double t) { return std::pow(phi(t) / scale, p) * w(t); }, a, b, cfg);
  const double integral = std::max(r.value, 0.0);
  const double norm = std::pow(integral, 1.0 / p);
  const double err = integral > 0.0 ? norm / (p * integral) * r.err_estimate
                                    : std::pow(r.err_estimate, 1.0 / p);
  return {scale * norm, scale * err, r.nodes_used, r.converged};
}

}  // namespace

EvalResult xpc_norm(const RealFunction& f, const SpaceParams& sp, const QuadratureConfig& cfg) {
  sp.validate();
  const double c = sp.c;
  if (std::isinf(sp.p)) {
    return sampled_sup([&](double t) { return std::pow(t, c) * std::abs(f(t)); }, sp.a, sp.b);
  }
  // dt/t folds into the integrand; a > 0 keeps it regular.
  return power_mean([&](double t) { return std::abs(std::pow(t, c) * f(t)); },
                    [](double t) { return 1.0 / t; }, sp.p, sp.a, sp.b, cfg);
}

EvalResult lp_norm(const RealFunction& f, double p, double a, double b,
                   const QuadratureConfig& cfg) {
  if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be in [1, inf]");
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("lp_norm: need finite a < b");
  }
  if (std::isinf(p)) return sampled_sup([&](double t) { return std::abs(f(t)); }, a, b);
  return power_mean([&](double t) { return std::abs(f(t)); }, [](double) { return 1.0; }, p, a, b,
                    cfg);
}

}  // namespace fraccalc
