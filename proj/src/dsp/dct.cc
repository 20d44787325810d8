// mvfe/dsp/dct.cc

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

#include "mvfe/dsp/dct.h"

#include <cmath>

#include "mvfe/simd/kernels.h"

namespace mvfe {

std::vector<double> DctMatrix(int32 dim) {
  if (dim < 1) throw ConfigError("dct dim must be positive");
  std::vector<double> m(static_cast<size_t>(dim) * dim);
  double c0 = std::sqrt(1.0 / dim), ck = std::sqrt(2.0 / dim);
  for (int32 k = 0; k < dim; k++) {
    double c = (k == 0) ? c0 : ck;
    for (int32 n = 0; n < dim; n++)
      m[static_cast<size_t>(k) * dim + n] =
          c * std::cos(M_PI / dim * (n + 0.5) * k);
  }
  return m;
}

static FeatureMatrix ApplyMatrix(const FeatureMatrix &feats,
                                 const std::vector<double> &m,
                                 bool transpose) {
  int32 d = feats.cols;
  FeatureMatrix out(feats.rows, d, feats.frame_shift_ms, feats.utt_id);
  std::vector<double> col(d);
  for (int32 t = 0; t < feats.rows; t++) {
    const double *x = feats.Row(t);
    double *y = out.Row(t);
    if (!transpose) {
      for (int32 k = 0; k < d; k++)
        y[k] = simd::Dot(&m[static_cast<size_t>(k) * d], x, d);
    } else {
      for (int32 k = 0; k < d; k++) {
        for (int32 n = 0; n < d; n++)
          col[n] = m[static_cast<size_t>(n) * d + k];
        y[k] = simd::Dot(col.data(), x, d);
      }
    }
  }
  return out;
}

FeatureMatrix DctRows(const FeatureMatrix &feats) {
  return ApplyMatrix(feats, DctMatrix(feats.cols), false);
}

FeatureMatrix IdctRows(const FeatureMatrix &feats) {
  return ApplyMatrix(feats, DctMatrix(feats.cols), true);
}

}  // namespace mvfe
