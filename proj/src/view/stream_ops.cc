// mvfe/view/stream_ops.cc

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

#include "mvfe/view/stream_ops.h"

#include <algorithm>
#include <cmath>

namespace mvfe {

FeatureMatrix Splice(const FeatureMatrix &feats, int32 left, int32 right) {
  if (left < 0 || right < 0)
    throw ConfigError("splice: context must be non-negative");
  int32 ctx = left + 1 + right;
  FeatureMatrix out(feats.rows, feats.cols * ctx, feats.frame_shift_ms,
                    feats.utt_id);
  for (int32 t = 0; t < feats.rows; t++) {
    double *dst = out.Row(t);
    for (int32 c = -left; c <= right; c++) {
      int32 src = std::clamp(t + c, 0, feats.rows - 1);
      const double *row = feats.Row(src);
      std::copy(row, row + feats.cols, dst);
      dst += feats.cols;
    }
  }
  return out;
}

FeatureMatrix ConcatStreams(
    const std::vector<const FeatureMatrix *> &streams) {
  if (streams.empty()) throw InputError("concat: no streams");
  int32 rows = streams[0]->rows;
  double shift = streams[0]->frame_shift_ms;
  int32 total_cols = 0;
  for (const FeatureMatrix *s : streams) {
    if (s->rows != rows)
      throw InputError("concat: frame count mismatch (utt '" + s->utt_id +
                       "', " + std::to_string(rows) + " vs " +
                       std::to_string(s->rows) + ")");
    if (std::abs(s->frame_shift_ms - shift) > 1e-9)
      throw ConfigError("concat: frame shift mismatch, " +
                        std::to_string(shift) + " ms vs " +
                        std::to_string(s->frame_shift_ms) + " ms");
    total_cols += s->cols;
  }
  FeatureMatrix out(rows, total_cols, shift, streams[0]->utt_id);
  for (int32 t = 0; t < rows; t++) {
    double *dst = out.Row(t);
    for (const FeatureMatrix *s : streams) {
      const double *row = s->Row(t);
      std::copy(row, row + s->cols, dst);
      dst += s->cols;
    }
  }
  return out;
}

FeatureMatrix Cmvn(const FeatureMatrix &feats) {
  if (feats.rows < 2)
    throw InputError("cmvn: need at least 2 frames, got " +
                     std::to_string(feats.rows) + " (utt '" + feats.utt_id +
                     "')");
  int32 d = feats.cols;
  std::vector<double> mean(d, 0.0), var(d, 0.0);
  for (int32 t = 0; t < feats.rows; t++) {
    const double *x = feats.Row(t);
    for (int32 i = 0; i < d; i++) mean[i] += x[i];
  }
  for (int32 i = 0; i < d; i++) mean[i] /= feats.rows;
  for (int32 t = 0; t < feats.rows; t++) {
    const double *x = feats.Row(t);
    for (int32 i = 0; i < d; i++) {
      double c = x[i] - mean[i];
      var[i] += c * c;
    }
  }
  std::vector<double> inv_std(d);
  for (int32 i = 0; i < d; i++)
    inv_std[i] = 1.0 / std::sqrt(std::max(var[i] / feats.rows, 1e-8));

  FeatureMatrix out(feats.rows, d, feats.frame_shift_ms, feats.utt_id);
  for (int32 t = 0; t < feats.rows; t++) {
    const double *x = feats.Row(t);
    double *y = out.Row(t);
    for (int32 i = 0; i < d; i++) y[i] = (x[i] - mean[i]) * inv_std[i];
  }
  return out;
}

}  // namespace mvfe
