// mvfe/rover/wer.cc

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

#include "mvfe/rover/wer.h"

#include <algorithm>

namespace mvfe {

WerReport ScoreWer(const std::vector<std::string> &hyp,
                   const std::vector<std::string> &ref) {
  WerReport report;
  report.ref_words = static_cast<int64>(ref.size());
  if (ref.empty()) {
    MVFE_WARN("scoring against an empty reference; WER counts "
              << hyp.size() << " insertions over a denominator of 1");
    report.insertions = static_cast<int64>(hyp.size());
    return report;
  }

  size_t r = ref.size(), h = hyp.size(), stride = h + 1;
  // Scratch buffers are reused across calls so batch scoring does not
  // churn the allocator.  Words are interned to dense ids first: the
  // DP then compares integers, and sentence-sized inputs make a linear
  // vocabulary scan cheaper than hashing.
  static thread_local std::vector<int32> dp, ids;
  static thread_local std::vector<const std::string *> vocab;
  vocab.clear();
  ids.resize(r + h);
  auto intern = [](const std::string &w) {
    for (size_t k = 0; k < vocab.size(); k++)
      if (*vocab[k] == w) return static_cast<int32>(k);
    vocab.push_back(&w);
    return static_cast<int32>(vocab.size() - 1);
  };
  for (size_t i = 0; i < r; i++) ids[i] = intern(ref[i]);
  for (size_t j = 0; j < h; j++) ids[r + j] = intern(hyp[j]);
  const int32 *rid = ids.data(), *hid = ids.data() + r;

  // dp[i * stride + j]: cost of aligning ref[0..i) with hyp[0..j).
  // The full table is kept for the backtrace.
  dp.resize((r + 1) * stride);
  for (size_t i = 0; i <= r; i++) dp[i * stride] = static_cast<int32>(i);
  for (size_t j = 0; j <= h; j++) dp[j] = static_cast<int32>(j);
  for (size_t i = 1; i <= r; i++) {
    const int32 *above = &dp[(i - 1) * stride];
    int32 *row = &dp[i * stride];
    const int32 w = rid[i - 1];
    int32 left = row[0];
    for (size_t j = 1; j <= h; j++) {
      int32 best = above[j - 1] + (w != hid[j - 1] ? 1 : 0);
      int32 del = above[j] + 1;
      if (del < best) best = del;
      int32 ins = left + 1;
      if (ins < best) best = ins;
      row[j] = best;
      left = best;
    }
  }

  // Backtrace preferring the diagonal on ties, so equal-cost alignments
  // report a substitution rather than a deletion plus insertion.
  size_t i = r, j = h;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      int32 diag = dp[(i - 1) * stride + j - 1] +
                   (rid[i - 1] != hid[j - 1] ? 1 : 0);
      if (dp[i * stride + j] == diag) {
        if (rid[i - 1] != hid[j - 1]) report.substitutions++;
        i--; j--;
        continue;
      }
    }
    if (i > 0 && dp[i * stride + j] == dp[(i - 1) * stride + j] + 1) {
      report.deletions++;
      i--;
      continue;
    }
    report.insertions++;
    j--;
  }
  return report;
}

}  // namespace mvfe
