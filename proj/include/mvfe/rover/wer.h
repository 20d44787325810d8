// mvfe/rover/wer.h

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

#ifndef MVFE_ROVER_WER_H_
#define MVFE_ROVER_WER_H_

#include <string>
#include <vector>

#include "mvfe/base/common.h"

namespace mvfe {

struct WerReport {
  int64 substitutions = 0;
  int64 deletions = 0;
  int64 insertions = 0;
  int64 ref_words = 0;

  int64 Errors() const { return substitutions + deletions + insertions; }
  // Empty references are scored against a denominator of 1.
  double Wer() const {
    return static_cast<double>(Errors()) /
           static_cast<double>(ref_words > 0 ? ref_words : 1);
  }
  void Add(const WerReport &other) {
    substitutions += other.substitutions;
    deletions += other.deletions;
    insertions += other.insertions;
    ref_words += other.ref_words;
  }
};

/// Minimum edit distance with unit costs; counts come from one optimal
/// alignment with ties broken toward substitution.  An empty reference
/// scores every hypothesis word as an insertion and warns.
WerReport ScoreWer(const std::vector<std::string> &hyp,
                   const std::vector<std::string> &ref);

}  // namespace mvfe

#endif  // MVFE_ROVER_WER_H_
