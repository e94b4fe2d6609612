#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace nilrig {

/// Runs fn(i) for i in [begin, end) across `threads` workers in contiguous
/// chunks. threads <= 1 degenerates to a plain loop. Exceptions from workers
/// are captured and the first one rethrown on the calling thread, so error
/// reporting is identical in serial and parallel runs.
template <typename Fn>
void parallel_for(long begin, long end, int threads, Fn&& fn) {
  const long n = end - begin;
  if (n <= 0) return;
  if (threads <= 1 || n == 1) {
    for (long i = begin; i < end; ++i) fn(i);
    return;
  }
  const int nw = static_cast<int>(std::min<long>(threads, n));
  const long chunk = (n + nw - 1) / nw;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(nw));
  for (int w = 0; w < nw; ++w) {
    const long lo = begin + w * chunk;
    const long hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, w, &fn, &errs] {
      try {
        for (long i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errs[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace nilrig
