// mvfe/dsp/framing.cc

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

#include "mvfe/dsp/framing.h"

#include <cmath>

namespace mvfe {

WindowFn WindowFnFromString(const std::string &name) {
  if (name == "hamming") return WindowFn::kHamming;
  if (name == "povey") return WindowFn::kPovey;
  if (name == "rectangular") return WindowFn::kRectangular;
  throw ConfigError("unknown window function \"" + name + "\"");
}

const char *WindowFnToString(WindowFn fn) {
  switch (fn) {
    case WindowFn::kHamming: return "hamming";
    case WindowFn::kPovey: return "povey";
    case WindowFn::kRectangular: return "rectangular";
  }
  return "hamming";
}

int32 FramingConfig::WindowSamples(int32 sample_rate) const {
  return static_cast<int32>(std::lround(window_ms * sample_rate / 1000.0));
}

int32 FramingConfig::ShiftSamples(int32 sample_rate) const {
  return static_cast<int32>(std::lround(shift_ms * sample_rate / 1000.0));
}

void FramingConfig::Validate(int32 sample_rate) const {
  if (shift_ms <= 0.0 || shift_ms > window_ms)
    throw ConfigError("framing: need 0 < shift <= window, got shift " +
                      std::to_string(shift_ms) + " ms, window " +
                      std::to_string(window_ms) + " ms");
  if (preemphasis < 0.0 || preemphasis >= 1.0)
    throw ConfigError("framing: preemphasis must be in [0, 1)");
  if (fft_size <= 0 || (fft_size & (fft_size - 1)) != 0)
    throw ConfigError("framing: fft_size must be a positive power of two");
  if (fft_size < WindowSamples(sample_rate))
    throw ConfigError("framing: fft_size " + std::to_string(fft_size) +
                      " smaller than window of " +
                      std::to_string(WindowSamples(sample_rate)) +
                      " samples");
  if (dither < 0.0) throw ConfigError("framing: dither must be >= 0");
}

int64 NumFrames(int64 num_samples, int32 window_samples,
                int32 shift_samples) {
  if (num_samples < window_samples) return 0;
  return 1 + (num_samples - window_samples) / shift_samples;
}

std::vector<double> MakeWindow(WindowFn fn, int32 length) {
  std::vector<double> w(length, 1.0);
  if (fn == WindowFn::kRectangular || length == 1) return w;
  const double two_pi = 2.0 * M_PI;
  for (int32 n = 0; n < length; ++n) {
    double c = std::cos(two_pi * n / (length - 1));
    if (fn == WindowFn::kHamming) {
      w[n] = 0.54 - 0.46 * c;
    } else {  // povey
      w[n] = std::pow(0.5 - 0.5 * c, 0.85);
    }
  }
  return w;
}

}  // namespace mvfe
