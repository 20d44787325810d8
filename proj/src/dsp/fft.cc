// mvfe/dsp/fft.cc

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

#include "mvfe/dsp/fft.h"

#include <cmath>

namespace mvfe {

Radix2Fft::Radix2Fft(int32 n) : n_(n) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw ConfigError("fft size must be a power of two >= 2, got " +
                      std::to_string(n));
  log2n_ = 0;
  while ((1 << log2n_) < n) log2n_++;

  bitrev_.resize(n);
  for (int32 i = 0; i < n; i++) {
    int32 r = 0;
    for (int32 b = 0; b < log2n_; b++)
      if (i & (1 << b)) r |= 1 << (log2n_ - 1 - b);
    bitrev_[i] = r;
  }

  twiddle_.resize(n / 2);
  for (int32 k = 0; k < n / 2; k++) {
    double ang = -2.0 * M_PI * k / n;
    twiddle_[k] = {std::cos(ang), std::sin(ang)};
  }
  work_.resize(n);
}

void Radix2Fft::Forward(std::complex<double> *x) const {
  for (int32 i = 0; i < n_; i++) {
    int32 j = bitrev_[i];
    if (j > i) std::swap(x[i], x[j]);
  }
  for (int32 len = 2; len <= n_; len <<= 1) {
    int32 half = len >> 1;
    int32 step = n_ / len;
    for (int32 base = 0; base < n_; base += len) {
      for (int32 k = 0; k < half; k++) {
        std::complex<double> w = twiddle_[k * step];
        std::complex<double> u = x[base + k];
        std::complex<double> t = w * x[base + k + half];
        x[base + k] = u + t;
        x[base + k + half] = u - t;
      }
    }
  }
}

void Radix2Fft::PowerSpectrum(const double *in, int32 in_len,
                              double *out) const {
  for (int32 i = 0; i < in_len; i++) work_[i] = {in[i], 0.0};
  for (int32 i = in_len; i < n_; i++) work_[i] = {0.0, 0.0};
  Forward(work_.data());
  for (int32 k = 0; k <= n_ / 2; k++) out[k] = std::norm(work_[k]);
}

}  // namespace mvfe
