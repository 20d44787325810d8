// mvfe/view/archive.h

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

#ifndef MVFE_VIEW_ARCHIVE_H_
#define MVFE_VIEW_ARCHIVE_H_

#include <map>
#include <string>
#include <vector>

#include "mvfe/base/feature_matrix.h"

namespace mvfe {

/// Ordered utt_id -> FeatureMatrix collection with unique ids and a
/// uniform feature dimension.  On disk ("MVF1"): 4-byte magic, then per
/// record u32-LE utt_id byte length, the id bytes, u32-LE rows, u32-LE
/// cols, u32-LE frame shift in microseconds, rows*cols f32-LE values
/// row-major.  Values are stored in 32 bits; write(read(f)) reproduces
/// f byte for byte.
class FeatureArchive {
 public:
  void Add(FeatureMatrix feats);

  int32 NumUtts() const { return static_cast<int32>(utts_.size()); }
  int32 Dim() const { return utts_.empty() ? 0 : utts_[0].cols; }
  bool Has(const std::string &utt_id) const;
  const FeatureMatrix &Get(const std::string &utt_id) const;
  const FeatureMatrix &Utt(int32 index) const { return utts_[index]; }
  FeatureMatrix &MutableUtt(int32 index) { return utts_[index]; }

  void Write(const std::string &path) const;
  static FeatureArchive Read(const std::string &path);

 private:
  std::vector<FeatureMatrix> utts_;
  std::map<std::string, int32> index_;
};

}  // namespace mvfe

#endif  // MVFE_VIEW_ARCHIVE_H_
