#include "fraccalc/function.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>
#include <utility>
#include <vector>

namespace fraccalc {

namespace {

double parse_number(std::string_view text, std::string_view whole) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw DescriptorError("invalid number '" + std::string(text) + "' in function descriptor '" +
                              std::string(whole) + "'",
                          std::string(text));
  }
  return value;
}

using Fn = RealFunction::Fn;

// Falling factorial v (v-1) ... (v-k+1).
double falling(double v, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= v - i;
  return r;
}

Fn power_term(double v, int k) {
  const double coeff = falling(v, k);
  if (coeff == 0.0) return [](double) { return 0.0; };
  const double e = v - k;
  if (e == 0.0) return [coeff](double) { return coeff; };
  return [coeff, e](double t) { return coeff * std::pow(t, e); };
}

Fn poly_term(std::vector<double> c, int k) {
  // Coefficients of the k-th derivative.
  std::vector<double> d;
  for (std::size_t i = static_cast<std::size_t>(k); i < c.size(); ++i) {
    d.push_back(c[i] * falling(static_cast<double>(i), k));
  }
  if (d.empty()) d.push_back(0.0);
  return [d = std::move(d)](double t) {
    double acc = 0.0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) acc = acc * t + *it;
    return acc;
  };
}

std::string descriptor_for(const char* family, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s:%.17g", family, v);
  return buf;
}

}  // namespace

RealFunction::RealFunction(Fn eval, std::array<Fn, kMaxDerivative> derivs, std::string descriptor)
    : eval_(std::make_shared<const Fn>(std::move(eval))), descriptor_(std::move(descriptor)) {
  for (int k = 0; k < kMaxDerivative; ++k) {
    if (derivs[k]) derivs_[k] = std::make_shared<const Fn>(std::move(derivs[k]));
  }
}

RealFunction RealFunction::constant(double k) {
  return RealFunction([k](double) { return k; },
                      {[](double) { return 0.0; }, [](double) { return 0.0; },
                       [](double) { return 0.0; }},
                      descriptor_for("const", k));
}

RealFunction RealFunction::power(double v) {
  return RealFunction(power_term(v, 0), {power_term(v, 1), power_term(v, 2), power_term(v, 3)},
                      descriptor_for("pow", v));
}

RealFunction RealFunction::parse(std::string_view text) {
  const std::string whole(text);
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{}
                                                                 : text.substr(colon + 1);
  const bool has_args = colon != std::string_view::npos;

  auto no_args = [&](Fn f, Fn d1, Fn d2, Fn d3) {
    if (has_args) {
      throw DescriptorError("family '" + std::string(head) + "' takes no arguments in '" + whole +
                                "'",
                            std::string(args));
    }
    return RealFunction(std::move(f), {std::move(d1), std::move(d2), std::move(d3)}, whole);
  };

  if (head == "const") {
    const double k = parse_number(args, text);
    RealFunction f = constant(k);
    f.descriptor_ = whole;
    return f;
  }
  if (head == "pow") {
    RealFunction f = power(parse_number(args, text));
    f.descriptor_ = whole;
    return f;
  }
  if (head == "poly") {
    std::vector<double> c;
    std::string_view rest = args;
    while (true) {
      const auto comma = rest.find(',');
      c.push_back(parse_number(rest.substr(0, comma), text));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return RealFunction(poly_term(c, 0), {poly_term(c, 1), poly_term(c, 2), poly_term(c, 3)},
                        whole);
  }
  if (head == "exp") {
    auto e = [](double t) { return std::exp(t); };
    return no_args(e, e, e, e);
  }
  if (head == "log") {
    return no_args([](double t) { return std::log(t); }, [](double t) { return 1.0 / t; },
                   [](double t) { return -1.0 / (t * t); },
                   [](double t) { return 2.0 / (t * t * t); });
  }
  if (head == "sin") {
    return no_args([](double t) { return std::sin(t); }, [](double t) { return std::cos(t); },
                   [](double t) { return -std::sin(t); }, [](double t) { return -std::cos(t); });
  }
  if (head == "scaled") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw DescriptorError("scaled needs 'scaled:k,<inner>' in '" + whole + "'", whole);
    }
    const double k = parse_number(args.substr(0, comma), text);
    RealFunction f = k * parse(args.substr(comma + 1));
    f.descriptor_ = whole;
    return f;
  }
  throw DescriptorError("unknown function family '" + std::string(head) + "' in '" + whole + "'",
                        std::string(head));
}

bool RealFunction::has_derivative(int order) const {
  if (order == 0) return eval_ != nullptr;
  return order > 0 && order <= kMaxDerivative && derivs_[order - 1] != nullptr;
}

std::optional<RealFunction> RealFunction::derivative(int order) const {
  if (!has_derivative(order)) return std::nullopt;
  if (order == 0) return *this;
  RealFunction d;
  d.eval_ = derivs_[order - 1];
  for (int k = order; k < kMaxDerivative; ++k) d.derivs_[k - order] = derivs_[k];
  d.descriptor_ = "d" + std::to_string(order) + "(" + descriptor_ + ")";
  return d;
}

RealFunction operator+(const RealFunction& f, const RealFunction& g) {
  RealFunction h;
  auto fe = f.eval_;
  auto ge = g.eval_;
  h.eval_ = std::make_shared<const Fn>([fe, ge](double t) { return (*fe)(t) + (*ge)(t); });
  for (int k = 0; k < RealFunction::kMaxDerivative; ++k) {
    auto fd = f.derivs_[k];
    auto gd = g.derivs_[k];
    if (fd && gd) {
      h.derivs_[k] = std::make_shared<const Fn>([fd, gd](double t) { return (*fd)(t) + (*gd)(t); });
    }
  }
  h.descriptor_ = f.descriptor_ + "+" + g.descriptor_;
  return h;
}

RealFunction operator*(double k, const RealFunction& f) {
  RealFunction h;
  auto fe = f.eval_;
  h.eval_ = std::make_shared<const Fn>([k, fe](double t) { return k * (*fe)(t); });
  for (int i = 0; i < RealFunction::kMaxDerivative; ++i) {
    if (auto fd = f.derivs_[i]) {
      h.derivs_[i] = std::make_shared<const Fn>([k, fd](double t) { return k * (*fd)(t); });
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "scaled:%.17g,", k);
  h.descriptor_ = buf + f.descriptor_;
  return h;
}

double derivative_consistency(const RealFunction& f, double a, double b, int samples) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> pick(a + 0.05 * (b - a), b - 0.05 * (b - a));
  double worst = 0.0;
  for (int k = 1; k <= RealFunction::kMaxDerivative; ++k) {
    if (!f.has_derivative(k)) continue;
    const RealFunction lower = *f.derivative(k - 1);
    const RealFunction exact = *f.derivative(k);
    for (int i = 0; i < samples; ++i) {
      const double t = pick(rng);
      const double h = 1e-4 * std::max(1.0, std::abs(t));
      // Fourth-order central difference keeps truncation well under 1e-6.
      const double fd = (lower(t - 2 * h) - 8 * lower(t - h) + 8 * lower(t + h) - lower(t + 2 * h)) /
                        (12 * h);
      const double ex = exact(t);
      worst = std::max(worst, std::abs(fd - ex) / std::max(1.0, std::abs(ex)));
    }
  }
  return worst;
}

}  // namespace fraccalc
