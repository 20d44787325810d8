// mvfe/feat/gammatone.cc

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

#include "mvfe/feat/gammatone.h"

#include <complex>

namespace mvfe {

GammatoneBank MakeGammatoneBank(const GammatoneConfig &config,
                                int32 sample_rate) {
  double nyquist = 0.5 * sample_rate;
  if (config.num_channels < 1)
    throw ConfigError("gammatone: need at least 1 channel");
  if (config.f_min <= 0.0 || config.f_min >= config.f_max)
    throw ConfigError("gammatone: need 0 < f_min < f_max");
  if (config.f_max >= nyquist)
    throw ConfigError("gammatone: f_max " + std::to_string(config.f_max) +
                      " must be below Nyquist " + std::to_string(nyquist));

  GammatoneBank bank;
  int32 nc = config.num_channels;
  double lo = HzToErbRate(config.f_min), hi = HzToErbRate(config.f_max);
  for (int32 c = 0; c < nc; c++) {
    double rate = (nc == 1) ? lo : lo + (hi - lo) * c / (nc - 1);
    double fc = ErbRateToHz(rate);
    bank.center_freqs.push_back(fc);
    bank.bandwidths.push_back(1.019 * ErbBandwidth(fc));
  }
  return bank;
}

// The sampled impulse response (nT)^3 rho^n with rho = e^((-2 pi b +
// j 2 pi fc) T) has z-transform rho z^-1 (1 + 4 rho z^-1 + rho^2 z^-2) /
// (1 - rho z^-1)^4, so the filter is a 3-tap complex FIR followed by four
// identical complex one-pole stages; the real part of the result carries
// the cos(2 pi fc t) response exactly.
std::vector<double> GammatoneFilter(const std::vector<double> &in, double fc,
                                    double bandwidth, int32 sample_rate) {
  if (fc >= 0.5 * sample_rate)
    throw ConfigError("gammatone: center frequency " + std::to_string(fc) +
                      " at or above Nyquist");
  using cd = std::complex<double>;
  double T = 1.0 / sample_rate;
  cd rho = std::exp(cd(-2.0 * M_PI * bandwidth * T, 2.0 * M_PI * fc * T));
  cd b1 = rho, b2 = 4.0 * rho * rho, b3 = rho * rho * rho;

  // Unit gain at fc for the real-output filter: the effective transfer
  // function of Re[.] applied to a real input is (H(w) + conj(H(-w)))/2.
  auto complex_gain = [&](double w) {
    cd zi = std::exp(cd(0.0, -w));
    cd num = zi * (b1 + zi * (b2 + zi * b3));
    cd den = 1.0 - rho * zi;
    return num / (den * den * den * den);
  };
  double wc = 2.0 * M_PI * fc * T;
  cd hr = 0.5 * (complex_gain(wc) + std::conj(complex_gain(-wc)));
  double scale = 1.0 / std::abs(hr);

  size_t n = in.size();
  std::vector<double> out(n);
  double x1 = 0.0, x2 = 0.0, x3 = 0.0;        // input history, lags 1..3
  cd s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;  // pole states
  for (size_t i = 0; i < n; i++) {
    cd v = b1 * x1 + b2 * x2 + b3 * x3;
    x3 = x2; x2 = x1; x1 = in[i];
    s1 = v + rho * s1;
    s2 = s1 + rho * s2;
    s3 = s2 + rho * s3;
    s4 = s3 + rho * s4;
    out[i] = scale * s4.real();
  }
  return out;
}

std::vector<std::vector<double>> GammatoneDecompose(
    const Waveform &wave, const GammatoneBank &bank) {
  if (!wave.AllFinite())
    throw InputError("waveform contains non-finite samples");
  std::vector<std::vector<double>> subbands(bank.NumChannels());
  for (int32 c = 0; c < bank.NumChannels(); c++)
    subbands[c] = GammatoneFilter(wave.samples, bank.center_freqs[c],
                                  bank.bandwidths[c], wave.sample_rate);
  return subbands;
}

}  // namespace mvfe
