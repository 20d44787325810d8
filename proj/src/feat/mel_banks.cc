// mvfe/feat/mel_banks.cc

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

#include "mvfe/feat/mel_banks.h"

#include "mvfe/simd/kernels.h"

namespace mvfe {

void MelBankConfig::Validate(int32 sample_rate) const {
  double nyquist = 0.5 * sample_rate;
  if (f_min < 0.0 || f_min >= f_max)
    throw ConfigError("mel bank: need 0 <= f_min < f_max, got f_min=" +
                      std::to_string(f_min) + " f_max=" +
                      std::to_string(f_max));
  if (f_max > nyquist)
    throw ConfigError("mel bank: f_max " + std::to_string(f_max) +
                      " exceeds Nyquist " + std::to_string(nyquist));
  if (num_filters < 2)
    throw ConfigError("mel bank: need at least 2 filters");
  if (log_floor <= 0.0)
    throw ConfigError("mel bank: log_floor must be positive");
}

MelBanks::MelBanks(const MelBankConfig &config, int32 sample_rate,
                   int32 fft_size) {
  config.Validate(sample_rate);
  num_bins_ = fft_size / 2 + 1;
  double bin_hz = static_cast<double>(sample_rate) / fft_size;

  // num_filters + 2 edge points, equally spaced in mel; filter j spans
  // [edge_j, edge_{j+2}] with its apex at edge_{j+1}.
  int32 nf = config.num_filters;
  double mel_lo = HzToMel(config.f_min), mel_hi = HzToMel(config.f_max);
  std::vector<double> edges(nf + 2);
  for (int32 i = 0; i < nf + 2; i++)
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * i / (nf + 1));

  centers_.resize(nf);
  weights_.assign(nf, std::vector<double>(num_bins_, 0.0));
  for (int32 j = 0; j < nf; j++) {
    double lo = edges[j], mid = edges[j + 1], hi = edges[j + 2];
    centers_[j] = mid;
    for (int32 k = 0; k < num_bins_; k++) {
      double f = k * bin_hz;
      double w = 0.0;
      if (f > lo && f < mid) w = (f - lo) / (mid - lo);
      else if (f >= mid && f < hi) w = (hi - f) / (hi - mid);
      weights_[j][k] = w;
    }
  }
}

void MelBanks::Apply(const double *power, double *out) const {
  for (size_t j = 0; j < weights_.size(); j++)
    out[j] = simd::Dot(weights_[j].data(), power, num_bins_);
}

}  // namespace mvfe
