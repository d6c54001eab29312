#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace powerspec {

struct Exec {
  unsigned workers = 1;

  static Exec hardware() { return Exec{std::max(1u, std::thread::hardware_concurrency())}; }
};

// Splits [0, count) into contiguous chunks, one per worker, and calls
// fn(worker, begin, end). Results must be merged by the caller in worker
// order so output never depends on scheduling.
template <typename Fn>
void parallel_chunks(const Exec& exec, std::size_t count, Fn&& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(exec.workers, count));
  if (workers == 1) {
    fn(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline std::size_t chunk_count(const Exec& exec, std::size_t count) {
  return std::max<std::size_t>(1, std::min<std::size_t>(exec.workers, count));
}

}  // namespace powerspec
