#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fraccalc/quadrature.hpp"

namespace fraccalc {

using PointEvaluator = std::function<EvalResult(double)>;

/// Evaluates `op` at every x, distributing points across OpenMP threads.
/// Output order matches `xs`; each entry is bit-identical to the serial
/// reference because points are independent. The first exception thrown by
/// any point is rethrown after the parallel region.
std::vector<EvalResult> evaluate_grid(const PointEvaluator& op, std::span<const double> xs);

/// Serial reference for evaluate_grid.
std::vector<EvalResult> evaluate_grid_ref(const PointEvaluator& op, std::span<const double> xs);

/// Same contract for arbitrary indexed work: out[i] = task(i), i < count.
std::vector<double> parallel_map(std::size_t count, const std::function<double(std::size_t)>& task);

int max_threads();

}  // namespace fraccalc
