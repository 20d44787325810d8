// mvfe/feat/doc.cc

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

#include "mvfe/feat/doc.h"

#include <cmath>

#include "mvfe/simd/kernels.h"

namespace mvfe {

FeatureMatrix ExtractDoc(const Waveform &wave, const GammatoneBank &gbank,
                         const OscillatorBank &obank, const DocConfig &cfg) {
  cfg.Validate();
  cfg.framing.Validate(wave.sample_rate);
  obank.Validate(wave.sample_rate);
  if (gbank.NumChannels() != obank.NumChannels())
    throw ConfigError("doc: gammatone bank has " +
                      std::to_string(gbank.NumChannels()) +
                      " channels, oscillator bank has " +
                      std::to_string(obank.NumChannels()));
  for (int32 c = 0; c < gbank.NumChannels(); c++) {
    double expect = 2.0 * M_PI * gbank.center_freqs[c];
    if (std::abs(obank.omega0[c] - expect) > 1e-6 * expect)
      throw ConfigError("doc: oscillator " + std::to_string(c) +
                        " is not tuned to its gammatone channel");
  }

  int32 win = cfg.framing.WindowSamples(wave.sample_rate);
  int32 shift = cfg.framing.ShiftSamples(wave.sample_rate);
  int64 n = static_cast<int64>(wave.samples.size());
  int32 num_frames = static_cast<int32>(NumFrames(n, win, shift));
  if (num_frames == 0)
    throw InputError("utterance too short: " + std::to_string(n) +
                     " samples, window is " + std::to_string(win));

  int32 nc = gbank.NumChannels();
  FeatureMatrix out(num_frames, nc, cfg.framing.shift_ms);
  std::vector<std::vector<double>> subbands = GammatoneDecompose(wave, gbank);
  for (int32 c = 0; c < nc; c++) {
    std::vector<double> x = OscillatorResponse(subbands[c], obank.omega0[c],
                                               obank.zeta, wave.sample_rate);
    for (int32 t = 0; t < num_frames; t++) {
      double ms = simd::SumSq(x.data() + static_cast<int64>(t) * shift, win) /
                  win;
      out.At(t, c) = std::pow(ms, cfg.compression);
    }
  }
  return out;
}

}  // namespace mvfe
