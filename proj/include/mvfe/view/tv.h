// mvfe/view/tv.h

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

#ifndef MVFE_VIEW_TV_H_
#define MVFE_VIEW_TV_H_

#include "mvfe/base/feature_matrix.h"

namespace mvfe {

/// Articulatory trajectories are 8-dimensional, in this dimension order:
/// glottal aperture, velic opening, lip aperture, lip protrusion,
/// tongue-tip location, tongue-tip degree, tongue-body location,
/// tongue-body degree.
constexpr int32 kTvDim = 8;

/// Resamples a TV stream onto the target frame grid by linear
/// interpolation between source frames (clamped at the ends, so output
/// values never overshoot the source range), then reconciles the length
/// with the paired acoustic stream: a difference of up to 2 frames is
/// fixed by truncation or last-row extension, more is an error.
FeatureMatrix IngestTv(const FeatureMatrix &source, double target_shift_ms,
                       int32 acoustic_frames);

}  // namespace mvfe

#endif  // MVFE_VIEW_TV_H_
