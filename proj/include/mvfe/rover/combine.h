// mvfe/rover/combine.h

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

#ifndef MVFE_ROVER_COMBINE_H_
#define MVFE_ROVER_COMBINE_H_

#include <map>
#include <string>
#include <vector>

#include "mvfe/rover/nbest.h"

namespace mvfe {

/// One alignment slot of the word transition network: vote weight and
/// first-voting system per token.  The empty string stands for NULL
/// (no word); real tokens are never empty.
struct WtnSlot {
  struct Vote {
    double weight = 0.0;
    int32 first_system = 0;
  };
  std::map<std::string, Vote> votes;

  double TotalWeight() const;
};

struct RoverOptions {
  double scale = 0.05;  // within-list softmax scale on log scores
  int32 depth_cap = 0;  // 0 = use every provided hypothesis
};

/// Progressive WTN combination with equal system weights: hypotheses
/// fold in system order, within a system by rank, each adding
/// (1/M) * its n-best weight.  A hypothesis aligns to the current
/// slot-representative sequence by minimum edit distance (NULL is an
/// ordinary non-matching token); insertions open new slots whose NULL
/// entry receives all weight folded before them, deletions add the
/// hypothesis weight to NULL.  Every slot's votes therefore total the
/// full folded weight (1 after all systems).
/// The winner per slot is the highest-weight token, NULL losing ties to
/// words; word ties go to the earliest voting system, then to the
/// lexicographically smaller token.  NULL-won slots are dropped.
std::vector<std::string> RoverCombine(const std::vector<NBestList> &systems,
                                      const RoverOptions &opts,
                                      std::vector<WtnSlot> *wtn_out = nullptr);

}  // namespace mvfe

#endif  // MVFE_ROVER_COMBINE_H_
