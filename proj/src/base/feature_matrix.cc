// mvfe/base/feature_matrix.cc

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

#include "mvfe/base/feature_matrix.h"

#include <cmath>

namespace mvfe {

bool FeatureMatrix::AllFinite() const {
  for (double v : data)
    if (!std::isfinite(v)) return false;
  return true;
}

bool Waveform::AllFinite() const {
  for (double v : samples)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace mvfe
