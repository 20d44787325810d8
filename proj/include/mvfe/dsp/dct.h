// mvfe/dsp/dct.h

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

#ifndef MVFE_DSP_DCT_H_
#define MVFE_DSP_DCT_H_

#include <vector>

#include "mvfe/base/common.h"
#include "mvfe/base/feature_matrix.h"

namespace mvfe {

/// Orthonormal DCT-II as an explicit d x d matrix.
/// Row k, column n:  c(k) * cos(pi/d * (n + 0.5) * k),
/// c(0) = sqrt(1/d), c(k>0) = sqrt(2/d).  The inverse is the transpose,
/// so DctMatrix(d) applied forward then transposed reconstructs exactly
/// up to rounding.
std::vector<double> DctMatrix(int32 dim);

// Applies the DCT to each row of feats (dim = feats.cols).
FeatureMatrix DctRows(const FeatureMatrix &feats);

// Applies the transpose (inverse transform) to each row.
FeatureMatrix IdctRows(const FeatureMatrix &feats);

}  // namespace mvfe

#endif  // MVFE_DSP_DCT_H_
