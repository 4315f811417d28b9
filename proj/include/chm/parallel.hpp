// Copyright 2026 The chm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace chm {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
/// visited exactly once; callers write results into per-index slots so the
/// outcome does not depend on scheduling. The first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

/// Pairwise combination of a stream of partial results, in stream order.
/// Keeps O(log n) partials alive; the tree shape only depends on the number
/// of pushes.
template <class T>
class PairwiseAccumulator {
 public:
  void push(T value) {
    std::size_t level = 0;
    while (!stack_.empty() && stack_.back().second == level) {
      value = stack_.back().first + value;
      stack_.pop_back();
      ++level;
    }
    stack_.emplace_back(std::move(value), level);
  }

  bool empty() const { return stack_.empty(); }

  /// Folds the remaining partials from the newest to the oldest.
  T result() && {
    T acc = std::move(stack_.back().first);
    stack_.pop_back();
    while (!stack_.empty()) {
      acc = stack_.back().first + acc;
      stack_.pop_back();
    }
    return acc;
  }

 private:
  std::vector<std::pair<T, std::size_t>> stack_;
};

}  // namespace chm
