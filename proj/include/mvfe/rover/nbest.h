// mvfe/rover/nbest.h

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

#ifndef MVFE_ROVER_NBEST_H_
#define MVFE_ROVER_NBEST_H_

#include <string>
#include <vector>

#include "mvfe/base/common.h"

namespace mvfe {

struct Hypothesis {
  std::vector<std::string> words;
  double score = 0.0;  // log-domain total score
  int32 rank = 0;      // 1-based
};

struct NBestList {
  std::string utt_id;
  std::vector<Hypothesis> hyps;  // ordered by rank

  // Ranks start at 1, are unique and ascending; scores non-increasing.
  void Validate() const;
};

/// Text format, one hypothesis per line:
///   <utt_id> <rank> <score> <w1> <w2> ...
/// Hypotheses may be empty (no words after the score).  Lists come back
/// in first-appearance order, each sorted by rank and validated.
std::vector<NBestList> ReadNBestFile(const std::string &path);

/// Reference transcripts: <utt_id> <w1> <w2> ... per line.
struct RefTranscript {
  std::string utt_id;
  std::vector<std::string> words;
};
std::vector<RefTranscript> ReadRefFile(const std::string &path);

/// Within-list weights: softmax of scale * (score - max score); sums
/// to 1.  scale must be positive.
std::vector<double> NBestWeights(const NBestList &list, double scale);

}  // namespace mvfe

#endif  // MVFE_ROVER_NBEST_H_
