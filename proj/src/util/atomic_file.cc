// mvfe/util/atomic_file.cc

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

#include "mvfe/util/atomic_file.h"

#include <cstdio>
#include <unistd.h>

namespace mvfe {

AtomicOutputFile::AtomicOutputFile(const std::string &path)
    : path_(path),
      temp_path_(path + ".tmp." + std::to_string(getpid())),
      stream_(temp_path_, std::ios::binary | std::ios::trunc) {
  if (!stream_)
    throw InputError("cannot open " + temp_path_ + " for writing");
}

AtomicOutputFile::~AtomicOutputFile() {
  if (!committed_) {
    stream_.close();
    std::remove(temp_path_.c_str());
  }
}

void AtomicOutputFile::Commit() {
  stream_.flush();
  if (!stream_) throw InputError("write to " + temp_path_ + " failed");
  stream_.close();
  if (std::rename(temp_path_.c_str(), path_.c_str()) != 0)
    throw InputError("rename " + temp_path_ + " -> " + path_ + " failed");
  committed_ = true;
}

}  // namespace mvfe
