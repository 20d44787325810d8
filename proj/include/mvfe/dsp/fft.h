// mvfe/dsp/fft.h

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

#ifndef MVFE_DSP_FFT_H_
#define MVFE_DSP_FFT_H_

#include <complex>
#include <vector>

#include "mvfe/base/common.h"

namespace mvfe {

/// Iterative radix-2 FFT for power-of-two sizes with precomputed
/// twiddles and bit-reversal table.  Sizes here are small (<= 4096); a
/// heavier FFT library would buy nothing.
class Radix2Fft {
 public:
  explicit Radix2Fft(int32 n);

  int32 Size() const { return n_; }

  // In-place complex transform.
  void Forward(std::complex<double> *x) const;

  // Squared magnitudes of bins 0..n/2 of the zero-padded real input.
  // `in_len` <= n; `out` has n/2 + 1 entries.
  void PowerSpectrum(const double *in, int32 in_len, double *out) const;

 private:
  int32 n_;
  int32 log2n_;
  std::vector<int32> bitrev_;
  std::vector<std::complex<double>> twiddle_;
  mutable std::vector<std::complex<double>> work_;
};

}  // namespace mvfe

#endif  // MVFE_DSP_FFT_H_
