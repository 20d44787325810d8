// mvfe/view/archive.cc

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

#include "mvfe/view/archive.h"

#include <cmath>
#include <fstream>

#include "mvfe/util/atomic_file.h"
#include "mvfe/util/io.h"

namespace mvfe {

void FeatureArchive::Add(FeatureMatrix feats) {
  if (feats.utt_id.empty())
    throw InputError("archive: utterance has empty utt_id");
  if (index_.count(feats.utt_id))
    throw InputError("archive: duplicate utt_id '" + feats.utt_id + "'");
  if (!utts_.empty() && feats.cols != utts_[0].cols)
    throw InputError("archive: dim mismatch, archive has " +
                     std::to_string(utts_[0].cols) + ", utt '" +
                     feats.utt_id + "' has " + std::to_string(feats.cols));
  index_[feats.utt_id] = static_cast<int32>(utts_.size());
  utts_.push_back(std::move(feats));
}

bool FeatureArchive::Has(const std::string &utt_id) const {
  return index_.count(utt_id) > 0;
}

const FeatureMatrix &FeatureArchive::Get(const std::string &utt_id) const {
  auto it = index_.find(utt_id);
  if (it == index_.end())
    throw InputError("archive: no utterance '" + utt_id + "'");
  return utts_[it->second];
}

void FeatureArchive::Write(const std::string &path) const {
  AtomicOutputFile file(path);
  std::ostream &os = file.Stream();
  os.write("MVF1", 4);
  for (const FeatureMatrix &fm : utts_) {
    WriteU32(os, static_cast<uint32>(fm.utt_id.size()));
    os.write(fm.utt_id.data(),
             static_cast<std::streamsize>(fm.utt_id.size()));
    WriteU32(os, static_cast<uint32>(fm.rows));
    WriteU32(os, static_cast<uint32>(fm.cols));
    WriteU32(os, static_cast<uint32>(std::lround(fm.frame_shift_ms * 1000.0)));
    for (double v : fm.data) WriteF32(os, static_cast<float>(v));
  }
  file.Commit();
}

FeatureArchive FeatureArchive::Read(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path);
  ExpectMagic(is, "MVF1", path);
  FeatureArchive archive;
  for (;;) {
    std::streampos record_at = is.tellg();
    int peek = is.peek();
    if (peek == std::char_traits<char>::eof()) break;
    uint32 id_len = ReadU32(is, path + ": utt_id length");
    if (id_len == 0 || id_len > (1u << 16))
      throw InputError(path + ": implausible utt_id length " +
                       std::to_string(id_len) + " at byte offset " +
                       std::to_string(static_cast<long long>(record_at)));
    std::string utt_id(id_len, '\0');
    ReadBytes(is, utt_id.data(), id_len, path + ": utt_id");
    uint32 rows = ReadU32(is, path + ": rows of '" + utt_id + "'");
    uint32 cols = ReadU32(is, path + ": cols of '" + utt_id + "'");
    uint32 shift_us = ReadU32(is, path + ": frame shift of '" + utt_id + "'");
    if (cols == 0 || cols > (1u << 20) || rows > (1u << 28))
      throw InputError(path + ": implausible shape " + std::to_string(rows) +
                       "x" + std::to_string(cols) + " for '" + utt_id +
                       "' at byte offset " +
                       std::to_string(static_cast<long long>(record_at)));
    FeatureMatrix fm(static_cast<int32>(rows), static_cast<int32>(cols),
                     shift_us / 1000.0, utt_id);
    for (size_t i = 0; i < fm.data.size(); i++)
      fm.data[i] = ReadF32(is, path + ": values of '" + utt_id + "'");
    try {
      archive.Add(std::move(fm));
    } catch (const InputError &err) {
      throw InputError(std::string(err.what()) + " at byte offset " +
                       std::to_string(static_cast<long long>(record_at)) +
                       " of " + path);
    }
  }
  return archive;
}

}  // namespace mvfe
