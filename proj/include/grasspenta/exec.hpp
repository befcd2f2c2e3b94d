#pragma once

#include <exception>
#include <limits>

namespace grasspenta {

// Every per-index kernel (over vertices k, bases k, or spectral samples) has a
// serial reference path and an OpenMP path. Both perform identical arithmetic
// per index, so results agree bit for bit.
enum class Exec { serial, parallel };

// Runs body(i) for i in [0, count). Exceptions are collected and the one from
// the smallest index is rethrown, so error reporting matches the serial path.
template <class Body>
void for_each_index(Exec exec, long count, Body&& body) {
  if (exec == Exec::serial || count < 2) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  long error_index = std::numeric_limits<long>::max();
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(grasspenta_for_each_index)
      {
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace grasspenta
