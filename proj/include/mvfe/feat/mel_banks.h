// mvfe/feat/mel_banks.h

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

#ifndef MVFE_FEAT_MEL_BANKS_H_
#define MVFE_FEAT_MEL_BANKS_H_

#include <cmath>
#include <vector>

#include "mvfe/base/common.h"

namespace mvfe {

struct MelBankConfig {
  int32 num_filters = 40;
  double f_min = 100.0;
  double f_max = 3800.0;
  double log_floor = 1e-10;

  void Validate(int32 sample_rate) const;
};

inline double HzToMel(double hz) {
  return 2595.0 * std::log10(1.0 + hz / 700.0);
}
inline double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

/// Triangular filters equally spaced on the mel scale.  Weights are
/// evaluated at each FFT bin's continuous frequency; bin edges are not
/// snapped, so adjacent triangles cross at exactly half height and the
/// band [f_min, f_max] has no holes.
class MelBanks {
 public:
  MelBanks(const MelBankConfig &config, int32 sample_rate, int32 fft_size);

  int32 NumFilters() const { return static_cast<int32>(weights_.size()); }
  int32 NumBins() const { return num_bins_; }
  double CenterFreq(int32 j) const { return centers_[j]; }

  // weights(j) has one entry per spectrum bin 0..fft_size/2.
  const std::vector<double> &Weights(int32 j) const { return weights_[j]; }

  // out[j] = sum_k weights[j][k] * power[k], j = 0..num_filters-1.
  void Apply(const double *power, double *out) const;

 private:
  int32 num_bins_;
  std::vector<double> centers_;
  std::vector<std::vector<double>> weights_;
};

}  // namespace mvfe

#endif  // MVFE_FEAT_MEL_BANKS_H_
