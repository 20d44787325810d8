// mvfe/dsp/stft.h

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

#ifndef MVFE_DSP_STFT_H_
#define MVFE_DSP_STFT_H_

#include "mvfe/base/feature_matrix.h"
#include "mvfe/dsp/framing.h"

namespace mvfe {

/// Power spectrogram: frame, optionally dither, pre-emphasize within the
/// frame, window, zero-pad to fft_size, |FFT|^2 over bins 0..fft_size/2.
/// Output is T x (fft_size/2 + 1).  Throws InputError if the utterance is
/// shorter than one window.
FeatureMatrix StftPower(const Waveform &wave, const FramingConfig &config);

}  // namespace mvfe

#endif  // MVFE_DSP_STFT_H_
