// mvfe/feat/doc.h

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

#ifndef MVFE_FEAT_DOC_H_
#define MVFE_FEAT_DOC_H_

#include "mvfe/base/feature_matrix.h"
#include "mvfe/dsp/framing.h"
#include "mvfe/feat/gammatone.h"
#include "mvfe/feat/oscillator.h"

namespace mvfe {

struct DocConfig {
  double compression = 1.0 / 15.0;  // power-law exponent p, in (0, 1]
  FramingConfig framing;            // energy pooling window/shift

  void Validate() const {
    if (compression <= 0.0 || compression > 1.0)
      throw ConfigError("doc: compression exponent must be in (0, 1]");
  }
};

/// Damped oscillator coefficients: gammatone subbands force one damped
/// oscillator per channel; cell (t, c) is the frame-t mean of x_c[n]^2
/// raised to cfg.compression.  Frames follow cfg.framing, so the shape
/// matches ExtractMfb for identical framing.
FeatureMatrix ExtractDoc(const Waveform &wave, const GammatoneBank &gbank,
                         const OscillatorBank &obank, const DocConfig &cfg);

}  // namespace mvfe

#endif  // MVFE_FEAT_DOC_H_
