// mvfe/feat/oscillator.h

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

#ifndef MVFE_FEAT_OSCILLATOR_H_
#define MVFE_FEAT_OSCILLATOR_H_

#include <vector>

#include "mvfe/base/common.h"
#include "mvfe/feat/gammatone.h"

namespace mvfe {

struct OscillatorBank {
  std::vector<double> omega0;  // rad/s, 2 pi * center_freq
  double zeta = 0.1;           // damping ratio, in (0, 1)

  int32 NumChannels() const { return static_cast<int32>(omega0.size()); }
  void Validate(int32 sample_rate) const;
};

OscillatorBank MakeOscillatorBank(const GammatoneBank &gbank, double zeta);

/// Displacement of x'' + 2 zeta w0 x' + w0^2 x = w0^2 f(t), zero initial
/// conditions, forcing held constant over each sample period.  The
/// recursion is the exact zero-order-hold solution of the state-space
/// form, so constant forcing settles at exactly unit static gain and no
/// per-step integration error accumulates.
std::vector<double> OscillatorResponse(const std::vector<double> &subband,
                                       double omega0, double zeta,
                                       int32 sample_rate);

}  // namespace mvfe

#endif  // MVFE_FEAT_OSCILLATOR_H_
