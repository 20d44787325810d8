// mvfe/dsp/framing.h

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

#ifndef MVFE_DSP_FRAMING_H_
#define MVFE_DSP_FRAMING_H_

#include <string>
#include <vector>

#include "mvfe/base/common.h"

namespace mvfe {

enum class WindowFn { kHamming, kPovey, kRectangular };

WindowFn WindowFnFromString(const std::string &name);
const char *WindowFnToString(WindowFn fn);

/// Frame extraction parameters.  Frames are snipped: only windows fully
/// inside the signal are emitted, so the frame count is
/// 1 + floor((N - window) / shift) and never depends on sample values.
struct FramingConfig {
  double window_ms = 25.0;
  double shift_ms = 10.0;
  WindowFn window_fn = WindowFn::kHamming;
  double preemphasis = 0.97;   // in [0, 1)
  int32 fft_size = 256;        // power of two, >= window in samples
  double dither = 0.0;         // stddev of seeded Gaussian dither; 0 = off
  uint64 dither_seed = 1;

  int32 WindowSamples(int32 sample_rate) const;
  int32 ShiftSamples(int32 sample_rate) const;
  void Validate(int32 sample_rate) const;
};

// 0 if the signal is shorter than one window.
int64 NumFrames(int64 num_samples, int32 window_samples, int32 shift_samples);

// Window weights of the given length.
std::vector<double> MakeWindow(WindowFn fn, int32 length);

}  // namespace mvfe

#endif  // MVFE_DSP_FRAMING_H_
