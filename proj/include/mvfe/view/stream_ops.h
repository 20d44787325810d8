// mvfe/view/stream_ops.h

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

#ifndef MVFE_VIEW_STREAM_OPS_H_
#define MVFE_VIEW_STREAM_OPS_H_

#include <vector>

#include "mvfe/base/feature_matrix.h"

namespace mvfe {

/// Row t becomes rows t-left .. t+right concatenated, with out-of-range
/// indices replaced by the first or last row (edge replication, not
/// zero padding).  T = 0 yields an empty matrix with the widened d.
FeatureMatrix Splice(const FeatureMatrix &feats, int32 left = 7,
                     int32 right = 7);

/// Column blocks in argument order; frame counts and frame shifts must
/// agree across streams.
FeatureMatrix ConcatStreams(const std::vector<const FeatureMatrix *> &streams);

/// Per-utterance, per-column mean/variance normalization; variances are
/// floored at 1e-8 before division, so constant columns map to zero.
/// Requires T >= 2.
FeatureMatrix Cmvn(const FeatureMatrix &feats);

}  // namespace mvfe

#endif  // MVFE_VIEW_STREAM_OPS_H_
