//  Copyright 2026 The polarlat Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef POLARLAT_PARALLEL_HPP_
#define POLARLAT_PARALLEL_HPP_

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace polarlat {

// Runs fn(chunk_index, begin, end) over a fixed chunk grid. The grid depends
// only on n_items, never on the worker count, so per-chunk partial results
// folded in chunk order are bit-identical for any number of workers.
inline void parallel_chunks(std::size_t n_items, std::size_t n_chunks, unsigned workers,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (n_items == 0) return;
  if (n_chunks == 0) n_chunks = 1;
  if (n_chunks > n_items) n_chunks = n_items;
  auto bounds = [&](std::size_t c) {
    const std::size_t lo = n_items * c / n_chunks;
    const std::size_t hi = n_items * (c + 1) / n_chunks;
    return std::pair<std::size_t, std::size_t>{lo, hi};
  };
  if (workers <= 1 || n_chunks == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      auto [lo, hi] = bounds(c);
      fn(c, lo, hi);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks || failed.load()) return;
      auto [lo, hi] = bounds(c);
      try {
        fn(c, lo, hi);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = workers < n_chunks ? workers : static_cast<unsigned>(n_chunks);
  pool.reserve(count);
  for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failed.load()) std::rethrow_exception(error);
}

}  // namespace polarlat

#endif  // POLARLAT_PARALLEL_HPP_
