// mvfe/view/tv.cc

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

#include "mvfe/view/tv.h"

#include <algorithm>
#include <cmath>

namespace mvfe {

FeatureMatrix IngestTv(const FeatureMatrix &source, double target_shift_ms,
                       int32 acoustic_frames) {
  if (source.cols != kTvDim)
    throw InputError("TV stream must be 8-dimensional, got d = " +
                     std::to_string(source.cols) + " (utt '" +
                     source.utt_id + "')");
  if (source.rows < 1)
    throw InputError("TV stream is empty (utt '" + source.utt_id + "')");
  if (target_shift_ms <= 0.0)
    throw ConfigError("tv: target shift must be positive");
  if (acoustic_frames < 1)
    throw InputError("tv: paired acoustic stream is empty");

  double src_shift = source.frame_shift_ms;
  if (src_shift <= 0.0)
    throw InputError("tv: source frame shift missing (utt '" +
                     source.utt_id + "')");

  // Frames on the target grid that fall inside the source time span.
  double span_ms = (source.rows - 1) * src_shift;
  int32 natural =
      1 + static_cast<int32>(std::floor(span_ms / target_shift_ms + 1e-9));

  int32 diff = natural - acoustic_frames;
  if (diff > 2 || diff < -2)
    throw InputError("tv: resampled length " + std::to_string(natural) +
                     " vs acoustic length " +
                     std::to_string(acoustic_frames) +
                     " differs by more than 2 frames (utt '" +
                     source.utt_id + "')");

  FeatureMatrix out(acoustic_frames, kTvDim, target_shift_ms, source.utt_id);
  for (int32 t = 0; t < acoustic_frames; t++) {
    double pos = t * target_shift_ms / src_shift;
    int32 lo = static_cast<int32>(std::floor(pos));
    lo = std::clamp(lo, 0, source.rows - 1);
    int32 hi = std::min(lo + 1, source.rows - 1);
    double frac = std::clamp(pos - lo, 0.0, 1.0);
    const double *a = source.Row(lo);
    const double *b = source.Row(hi);
    double *y = out.Row(t);
    for (int32 i = 0; i < kTvDim; i++)
      y[i] = a[i] + frac * (b[i] - a[i]);
  }
  return out;
}

}  // namespace mvfe
