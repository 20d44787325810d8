// mvfe/util/parallel.h

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MVFE_UTIL_PARALLEL_H_
#define MVFE_UTIL_PARALLEL_H_

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "mvfe/base/common.h"

namespace mvfe {

/// Runs fn(i) for i in [0, num_items) on up to num_threads threads.
/// Items are independent work shards; callers that need deterministic
/// output write per-shard results and reduce them in index order after
/// this returns.  The first exception thrown by any shard is rethrown.
template <typename Fn>
void ParallelFor(int32 num_items, int32 num_threads, Fn fn) {
  if (num_items <= 0) return;
  if (num_threads <= 1 || num_items == 1) {
    for (int32 i = 0; i < num_items; i++) fn(i);
    return;
  }
  int32 workers = std::min(num_threads, num_items);
  std::atomic<int32> next(0);
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      int32 i = next.fetch_add(1);
      if (i >= num_items) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int32 w = 0; w < workers; w++) threads.emplace_back(worker);
  for (auto &t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace mvfe

#endif  // MVFE_UTIL_PARALLEL_H_
