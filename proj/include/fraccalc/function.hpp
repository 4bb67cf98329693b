#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fraccalc {

/// Thrown when a descriptor does not parse. `token()` names the offending piece.
class DescriptorError : public std::invalid_argument {
 public:
  DescriptorError(const std::string& what, std::string token)
      : std::invalid_argument(what), token_(std::move(token)) {}
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

/// An evaluatable real function with up to three optional analytic
/// derivatives. Copies share the underlying callables, which must be
/// re-entrant.
///
/// Built-in families are constructed from a small colon/comma grammar:
///
///     const:k            k
///     pow:v              t^v
///     poly:c0,c1,...,cn  c0 + c1 t + ... + cn t^n
///     exp                e^t
///     log                ln t
///     sin                sin t
///     scaled:k,<inner>   k * inner(t)
///
/// Every built-in family carries its first three derivatives.
class RealFunction {
 public:
  using Fn = std::function<double(double)>;
  static constexpr int kMaxDerivative = 3;

  RealFunction() = default;

  /// Wrap a callable. `derivs[k-1]`, when set, is the k-th derivative.
  explicit RealFunction(Fn eval, std::array<Fn, kMaxDerivative> derivs = {},
                        std::string descriptor = "<callable>");

  /// Parse a mini-language descriptor. Throws DescriptorError.
  static RealFunction parse(std::string_view descriptor);

  static RealFunction constant(double k);
  static RealFunction power(double v);

  double operator()(double t) const { return (*eval_)(t); }

  bool has_derivative(int order) const;

  /// The order-th derivative as a function (order 0 is the function itself),
  /// or nullopt when it is not analytically available.
  std::optional<RealFunction> derivative(int order) const;

  const std::string& descriptor() const noexcept { return descriptor_; }

  /// Linear combinations keep derivatives present on both operands.
  friend RealFunction operator+(const RealFunction& f, const RealFunction& g);
  friend RealFunction operator*(double k, const RealFunction& f);

 private:
  std::shared_ptr<const Fn> eval_;
  std::array<std::shared_ptr<const Fn>, kMaxDerivative> derivs_{};
  std::string descriptor_;
};

/// Largest relative mismatch between each analytic derivative and a central
/// finite difference of the next lower one, over `samples` points of (a, b)
/// drawn from a fixed seed.
double derivative_consistency(const RealFunction& f, double a, double b, int samples = 10);

}  // namespace fraccalc
