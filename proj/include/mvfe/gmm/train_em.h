// mvfe/gmm/train_em.h

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

#ifndef MVFE_GMM_TRAIN_EM_H_
#define MVFE_GMM_TRAIN_EM_H_

#include <vector>

#include "mvfe/base/feature_matrix.h"
#include "mvfe/gmm/diag_gmm.h"

namespace mvfe {

struct TrainEmOptions {
  int32 num_comps = 64;
  int32 iters = 10;
  uint64 seed = 0;
  // <= 0 selects the automatic floor, 1e-3 of the global per-dim
  // variance; a positive value is used as-is for every dimension.
  double variance_floor = 0.0;
  int32 num_threads = 1;
};

/// Seeded k-means initialization (10 Lloyd passes on a subsample)
/// followed by EM.  Deterministic for fixed (data, options): E-step
/// accumulation is sharded in fixed 4096-frame blocks and reduced in
/// block order regardless of thread count.  If `ll_history` is non-null
/// it receives the total data log-likelihood evaluated before each
/// iteration's M-step; the sequence is non-decreasing.
DiagGmm TrainEm(const std::vector<const FeatureMatrix *> &data,
                const TrainEmOptions &opts,
                std::vector<double> *ll_history = nullptr);

DiagGmm TrainEm(const FeatureMatrix &data, const TrainEmOptions &opts,
                std::vector<double> *ll_history = nullptr);

}  // namespace mvfe

#endif  // MVFE_GMM_TRAIN_EM_H_
