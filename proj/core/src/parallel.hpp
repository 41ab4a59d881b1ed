#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace quadrm::detail {

/// Splits [0, total) into contiguous chunks, runs fn(begin, end) for each on
/// its own thread and returns the partial results in chunk order. Callers
/// merge partials with an associative, commutative operation, so the result
/// does not depend on `workers`.
template <class Fn>
auto run_partitioned(std::uint64_t total, unsigned workers, Fn fn) -> std::vector<decltype(fn(std::uint64_t{},
                                                                                             std::uint64_t{}))> {
  using Partial = decltype(fn(std::uint64_t{}, std::uint64_t{}));
  workers = std::max(1u, workers);
  if (workers == 1 || total < workers) return {fn(0, total)};

  std::vector<Partial> partials(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(total, w * chunk);
    const std::uint64_t end = std::min(total, begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      try {
        partials[w] = fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return partials;
}

}  // namespace quadrm::detail
