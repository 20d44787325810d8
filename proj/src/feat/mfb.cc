// mvfe/feat/mfb.cc

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

#include "mvfe/feat/mfb.h"

#include <cmath>

#include "mvfe/dsp/stft.h"

namespace mvfe {

FeatureMatrix ExtractMfb(const Waveform &wave, const FramingConfig &framing,
                         const MelBankConfig &bank) {
  bank.Validate(wave.sample_rate);
  FeatureMatrix power = StftPower(wave, framing);
  MelBanks banks(bank, wave.sample_rate, framing.fft_size);

  FeatureMatrix out(power.rows, bank.num_filters, framing.shift_ms);
  for (int32 t = 0; t < power.rows; t++) {
    double *row = out.Row(t);
    banks.Apply(power.Row(t), row);
    for (int32 j = 0; j < bank.num_filters; j++)
      row[j] = std::log(std::max(bank.log_floor, row[j]));
  }
  return out;
}

}  // namespace mvfe
