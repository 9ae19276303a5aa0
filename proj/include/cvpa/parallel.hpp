#pragma once

#include <cstddef>
#include <exception>
#include <utility>
#include <vector>

#include <omp.h>

#include "cvpa/report.hpp"

namespace cvpa {

/// How many workers a checker may use. threads == 1 selects the serial
/// reference loop; 0 means "let OpenMP decide".
struct Exec {
  int threads = 0;

  static Exec serial() { return Exec{1}; }
  /// Reads COURANT_VPA_THREADS (0 or unset = auto).
  static Exec from_env();
  int resolved() const;
};

/// Runs body(i, report) for i in [0, n) and returns the merged, sorted report.
/// The serial path is a plain loop; the parallel path partitions the index
/// range across OpenMP threads with thread-local reports.
template <class Body>
CheckReport collect(std::size_t n, const Exec& exec, Body&& body) {
  CheckReport out;
  int threads = exec.resolved();
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i, out);
    out.sort();
    return out;
  }
  std::vector<CheckReport> partial(static_cast<std::size_t>(threads));
  std::exception_ptr failure;
#pragma omp parallel for num_threads(threads) schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i), partial[static_cast<std::size_t>(omp_get_thread_num())]);
    } catch (...) {
#pragma omp critical(cvpa_collect_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (auto& p : partial) out.merge(p);
  out.sort();
  return out;
}

}  // namespace cvpa
