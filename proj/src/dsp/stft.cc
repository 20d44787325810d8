// mvfe/dsp/stft.cc

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

#include "mvfe/dsp/stft.h"

#include <random>

#include "mvfe/dsp/fft.h"

namespace mvfe {

FeatureMatrix StftPower(const Waveform &wave, const FramingConfig &config) {
  config.Validate(wave.sample_rate);
  if (!wave.AllFinite())
    throw InputError("waveform contains non-finite samples");

  int32 win = config.WindowSamples(wave.sample_rate);
  int32 shift = config.ShiftSamples(wave.sample_rate);
  int64 n = static_cast<int64>(wave.samples.size());
  int32 num_frames = static_cast<int32>(NumFrames(n, win, shift));
  if (num_frames == 0)
    throw InputError("utterance too short: " + std::to_string(n) +
                     " samples, window is " + std::to_string(win));

  std::vector<double> window = MakeWindow(config.window_fn, win);
  Radix2Fft fft(config.fft_size);
  int32 num_bins = config.fft_size / 2 + 1;

  FeatureMatrix out(num_frames, num_bins, config.shift_ms);

  // Dither is drawn per frame in frame order so the result does not
  // depend on how frames are scheduled.
  std::mt19937 rng(config.dither_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> frame(win);
  for (int32 t = 0; t < num_frames; t++) {
    const double *src = wave.samples.data() + static_cast<int64>(t) * shift;
    for (int32 i = 0; i < win; i++) frame[i] = src[i];
    if (config.dither > 0.0)
      for (int32 i = 0; i < win; i++) frame[i] += config.dither * gauss(rng);
    if (config.preemphasis > 0.0) {
      for (int32 i = win - 1; i > 0; i--)
        frame[i] -= config.preemphasis * frame[i - 1];
      frame[0] *= 1.0 - config.preemphasis;
    }
    for (int32 i = 0; i < win; i++) frame[i] *= window[i];
    fft.PowerSpectrum(frame.data(), win, out.Row(t));
  }
  return out;
}

}  // namespace mvfe
