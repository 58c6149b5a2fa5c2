// Copyright 2026 The chancap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace chancap {

// Worker cap: hardware concurrency clamped by the CHANCAP_THREADS environment
// variable (integer >= 1). Unparsable values fall back to 1.
inline int worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("CHANCAP_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1 && static_cast<unsigned long>(cap) < n) {
        n = static_cast<unsigned>(cap);
      } else if (cap < 1) {
        n = 1;
      }
    } catch (...) {
      n = 1;
    }
  }
  return static_cast<int>(n);
}

// Runs fn(i) for i in [0, n). Work is split into contiguous index ranges;
// results must be written into per-index slots so the outcome is independent
// of the worker count.
template <typename Fn>
void parallel_for(long long n, Fn&& fn) {
  const int workers = worker_count();
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
  const int used = static_cast<int>(std::min<long long>(workers, n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(used));
  const long long chunk = (n + used - 1) / used;
  for (int w = 0; w < used; ++w) {
    const long long lo = w * chunk;
    const long long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (long long i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace chancap
