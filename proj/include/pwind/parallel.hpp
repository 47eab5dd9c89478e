#ifndef PWIND_PARALLEL_HPP
#define PWIND_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pwind {

/// Execution mode for the batch kernels. Serial is the reference
/// implementation; OpenMP distributes iterations over threads. Every kernel
/// writes each result into its own slot and reduces serially afterwards, so
/// both modes produce bit-identical output.
enum class ExecMode { Serial, OpenMP };

inline const char* to_string(ExecMode m) { return m == ExecMode::Serial ? "serial" : "openmp"; }

/// Run f(i) for i in [0, n). Work items must be independent.
template <class F>
void for_each_index(std::size_t n, ExecMode mode, F&& f) {
  if (mode == ExecMode::OpenMP) {
#ifdef _OPENMP
    #pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) f(static_cast<std::size_t>(i));
    return;
#endif
  }
  for (std::size_t i = 0; i < n; ++i) f(i);
}

/// Like for_each_index, but exceptions thrown by work items are captured and
/// the lowest-index one is rethrown after the loop joins. OpenMP regions must
/// not leak exceptions, and rethrowing in index order keeps failures
/// deterministic across modes.
template <class F>
void for_each_index_capturing(std::size_t n, ExecMode mode, F&& f) {
  std::vector<std::exception_ptr> errors(n);
  for_each_index(n, mode, [&](std::size_t i) {
    try {
      f(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (std::size_t i = 0; i < n; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
}

/// Map f over inputs into a fresh vector, one slot per item.
template <class T, class F>
auto batch_map(const std::vector<T>& inputs, ExecMode mode, F&& f) -> std::vector<decltype(f(inputs[0]))> {
  std::vector<decltype(f(inputs[0]))> out(inputs.size());
  for_each_index_capturing(inputs.size(), mode, [&](std::size_t i) { out[i] = f(inputs[i]); });
  return out;
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace pwind

#endif
