// mvfe/feat/gammatone.h

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

#ifndef MVFE_FEAT_GAMMATONE_H_
#define MVFE_FEAT_GAMMATONE_H_

#include <cmath>
#include <vector>

#include "mvfe/base/feature_matrix.h"

namespace mvfe {

// Glasberg-Moore ERB conventions.
inline double ErbBandwidth(double hz) {
  return 24.7 * (0.00437 * hz + 1.0);
}
inline double HzToErbRate(double hz) {
  return 21.4 * std::log10(1.0 + 0.00437 * hz);
}
inline double ErbRateToHz(double rate) {
  return (std::pow(10.0, rate / 21.4) - 1.0) / 0.00437;
}

struct GammatoneConfig {
  int32 num_channels = 40;
  double f_min = 100.0;
  double f_max = 3800.0;
};

/// 4th-order gammatone bank, center frequencies equally spaced on the
/// ERB-rate scale between f_min and f_max inclusive.
struct GammatoneBank {
  std::vector<double> center_freqs;  // Hz, strictly increasing
  std::vector<double> bandwidths;    // Hz, 1.019 * ERB(fc)

  int32 NumChannels() const { return static_cast<int32>(center_freqs.size()); }
};

GammatoneBank MakeGammatoneBank(const GammatoneConfig &config,
                                int32 sample_rate);

/// One subband: 4th-order gammatone at (fc, b), impulse-invariant so the
/// sampled response is t^3 e^(-2 pi b t) cos(2 pi fc t) up to scale, then
/// normalized to unit magnitude response at fc.  Output length equals
/// input length; group delay is not corrected.
std::vector<double> GammatoneFilter(const std::vector<double> &in, double fc,
                                    double bandwidth, int32 sample_rate);

// All subbands of `wave`; result[c] has wave.samples.size() entries.
std::vector<std::vector<double>> GammatoneDecompose(const Waveform &wave,
                                                    const GammatoneBank &bank);

}  // namespace mvfe

#endif  // MVFE_FEAT_GAMMATONE_H_
