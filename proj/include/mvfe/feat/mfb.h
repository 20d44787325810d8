// mvfe/feat/mfb.h

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

#ifndef MVFE_FEAT_MFB_H_
#define MVFE_FEAT_MFB_H_

#include "mvfe/base/feature_matrix.h"
#include "mvfe/dsp/framing.h"
#include "mvfe/feat/mel_banks.h"

namespace mvfe {

/// Log mel-filterbank energies, T x num_filters.
/// Each cell is log(max(log_floor, filter-weighted power)); natural log.
FeatureMatrix ExtractMfb(const Waveform &wave, const FramingConfig &framing,
                         const MelBankConfig &bank);

}  // namespace mvfe

#endif  // MVFE_FEAT_MFB_H_
