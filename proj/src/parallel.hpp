#pragma once

#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace jetreg::detail {

/// Evaluates fn(0..count-1) and returns results in index order.  Tasks run on
/// separate threads when the machine has more than one core; fn must not touch
/// shared mutable state, so the result never depends on scheduling.
template <class Fn>
auto parallel_map(std::size_t count, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out;
  out.reserve(count);
  if (count <= 1 || std::thread::hardware_concurrency() <= 1) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
    return out;
  }
  std::vector<std::future<R>> futures;
  futures.reserve(count);
  for (std::size_t i = 0; i < count; ++i) futures.push_back(std::async(std::launch::async, fn, i));
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace jetreg::detail
