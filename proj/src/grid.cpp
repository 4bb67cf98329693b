#include "fraccalc/grid.hpp"

#include <exception>

#if defined(FRACCALC_USE_OPENMP)
#include <omp.h>
#endif

namespace fraccalc {

int max_threads() {
#if defined(FRACCALC_USE_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<EvalResult> evaluate_grid_ref(const PointEvaluator& op, std::span<const double> xs) {
  std::vector<EvalResult> out;
  out.reserve(xs.size());
  for (const double x : xs) out.push_back(op(x));
  return out;
}

std::vector<EvalResult> evaluate_grid(const PointEvaluator& op, std::span<const double> xs) {
  std::vector<EvalResult> out(xs.size());
  std::exception_ptr failure;
  const long n = static_cast<long>(xs.size());
#if defined(FRACCALC_USE_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = op(xs[i]);
    } catch (...) {
#if defined(FRACCALC_USE_OPENMP)
#pragma omp critical(fraccalc_grid_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> parallel_map(std::size_t count,
                                 const std::function<double(std::size_t)>& task) {
  std::vector<double> out(count);
  std::exception_ptr failure;
  const long n = static_cast<long>(count);
#if defined(FRACCALC_USE_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = task(static_cast<std::size_t>(i));
    } catch (...) {
#if defined(FRACCALC_USE_OPENMP)
#pragma omp critical(fraccalc_grid_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace fraccalc
