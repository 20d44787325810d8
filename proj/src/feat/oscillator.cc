// mvfe/feat/oscillator.cc

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

#include "mvfe/feat/oscillator.h"

#include <cmath>

namespace mvfe {

void OscillatorBank::Validate(int32 sample_rate) const {
  if (zeta <= 0.0 || zeta >= 1.0)
    throw ConfigError("oscillator: damping ratio must be in (0, 1), got " +
                      std::to_string(zeta));
  for (double w : omega0)
    if (w >= M_PI * sample_rate)
      throw ConfigError("oscillator unresolvable at this rate: omega0 = " +
                        std::to_string(w) + " rad/s, sample_rate = " +
                        std::to_string(sample_rate));
}

OscillatorBank MakeOscillatorBank(const GammatoneBank &gbank, double zeta) {
  OscillatorBank obank;
  obank.zeta = zeta;
  for (double fc : gbank.center_freqs)
    obank.omega0.push_back(2.0 * M_PI * fc);
  return obank;
}

std::vector<double> OscillatorResponse(const std::vector<double> &subband,
                                       double omega0, double zeta,
                                       int32 sample_rate) {
  if (zeta <= 0.0 || zeta >= 1.0)
    throw ConfigError("oscillator: damping ratio must be in (0, 1)");
  if (omega0 >= M_PI * sample_rate)
    throw ConfigError("oscillator unresolvable at this rate: omega0 = " +
                      std::to_string(omega0) + " rad/s, sample_rate = " +
                      std::to_string(sample_rate));

  // State [x, v]; continuous A = [[0, 1], [-w0^2, -2 zeta w0]], input
  // matrix B = [0, w0^2]^T.  Over one step of length T with held input,
  // x_{n+1} = Ad x_n + Bd u_n where Ad = exp(A T) in closed form for the
  // underdamped case and Bd = (I - Ad) [1, 0]^T (A^-1 B = [-1, 0]^T).
  double T = 1.0 / sample_rate;
  double a = zeta * omega0;
  double wd = omega0 * std::sqrt(1.0 - zeta * zeta);
  double e = std::exp(-a * T);
  double c = std::cos(wd * T), s = std::sin(wd * T);
  double ad00 = e * (c + (a / wd) * s);
  double ad01 = e * s / wd;
  double ad10 = -omega0 * omega0 * e * s / wd;
  double ad11 = e * (c - (a / wd) * s);
  double bd0 = 1.0 - ad00;
  double bd1 = -ad10;

  size_t n = subband.size();
  std::vector<double> out(n);
  double x = 0.0, v = 0.0;
  for (size_t i = 0; i < n; i++) {
    double u = subband[i];
    double nx = ad00 * x + ad01 * v + bd0 * u;
    double nv = ad10 * x + ad11 * v + bd1 * u;
    x = nx;
    v = nv;
    out[i] = x;
  }
  return out;
}

}  // namespace mvfe
