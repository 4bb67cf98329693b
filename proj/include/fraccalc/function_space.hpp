#pragma once

#include <limits>

#include "fraccalc/function.hpp"
#include "fraccalc/quadrature.hpp"

namespace fraccalc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Identifies the weighted space X^p_c(a, b). p = kInfinity selects the
/// essential-sup norm.
struct SpaceParams {
  double p = 1.0;
  double c = 0.0;
  double a = 1.0;
  double b = 2.0;

  /// Requires 1 <= p <= inf and 0 < a < b < inf.
  void validate() const;
};

/// Number of first-kind Chebyshev samples used to bracket an essential sup.
inline constexpr int kSupSamples = 4097;

/// ||f||_{X^p_c} = (int_a^b |t^c f(t)|^p dt / t)^(1/p), or
/// sup_{a<=t<=b} t^c |f(t)| for p = inf.
EvalResult xpc_norm(const RealFunction& f, const SpaceParams& sp, const QuadratureConfig& cfg = {});

/// Classical (int_a^b |f|^p dt)^(1/p), or sup |f| for p = inf. Allows a = 0.
EvalResult lp_norm(const RealFunction& f, double p, double a, double b,
                   const QuadratureConfig& cfg = {});

/// Maximum of phi over [a, b]: dense Chebyshev sampling followed by a
/// golden-section search around the best sample. Endpoints are approached
/// but never evaluated.
EvalResult sampled_sup(const std::function<double(double)>& phi, double a, double b);

}  // namespace fraccalc
