// mvfe/base/feature_matrix.h

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

#ifndef MVFE_BASE_FEATURE_MATRIX_H_
#define MVFE_BASE_FEATURE_MATRIX_H_

#include <span>
#include <string>
#include <vector>

#include "mvfe/base/common.h"

namespace mvfe {

/// T x d matrix of per-frame features, the currency between all pipeline
/// stages.  Values are held in double for numeric headroom; the archive
/// format stores them as 32-bit floats.
struct FeatureMatrix {
  int32 rows = 0;               // frame count T (>= 0)
  int32 cols = 0;               // feature dimension d (> 0)
  double frame_shift_ms = 10.0;
  std::string utt_id;
  std::vector<double> data;     // row-major, rows * cols

  FeatureMatrix() = default;
  FeatureMatrix(int32 r, int32 c, double shift_ms = 10.0,
                std::string utt = "")
      : rows(r), cols(c), frame_shift_ms(shift_ms), utt_id(std::move(utt)),
        data(static_cast<size_t>(r) * c, 0.0) {
    if (r < 0 || c <= 0)
      throw InputError("FeatureMatrix: invalid shape " + std::to_string(r) +
                       "x" + std::to_string(c));
  }

  double *Row(int32 t) { return data.data() + static_cast<size_t>(t) * cols; }
  const double *Row(int32 t) const {
    return data.data() + static_cast<size_t>(t) * cols;
  }
  std::span<const double> RowSpan(int32 t) const {
    return {Row(t), static_cast<size_t>(cols)};
  }
  std::span<double> RowSpan(int32 t) {
    return {Row(t), static_cast<size_t>(cols)};
  }
  double &At(int32 t, int32 j) {
    return data[static_cast<size_t>(t) * cols + j];
  }
  double At(int32 t, int32 j) const {
    return data[static_cast<size_t>(t) * cols + j];
  }

  bool AllFinite() const;
};

/// Mono audio at a fixed sample rate; nominal amplitude range [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int32 sample_rate = 8000;

  Waveform() = default;
  Waveform(std::vector<double> s, int32 sr)
      : samples(std::move(s)), sample_rate(sr) {
    if (sr <= 0) throw InputError("Waveform: sample_rate must be positive");
  }

  double DurationSeconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
  bool AllFinite() const;
};

}  // namespace mvfe

#endif  // MVFE_BASE_FEATURE_MATRIX_H_
