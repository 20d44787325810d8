// mvfe/util/atomic_file.h

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

#ifndef MVFE_UTIL_ATOMIC_FILE_H_
#define MVFE_UTIL_ATOMIC_FILE_H_

#include <fstream>
#include <string>

#include "mvfe/base/common.h"

namespace mvfe {

/// Writes to <path>.tmp.<pid> and renames onto <path> at Commit(); a
/// crash or thrown exception leaves any existing file untouched.
class AtomicOutputFile {
 public:
  explicit AtomicOutputFile(const std::string &path);
  ~AtomicOutputFile();

  AtomicOutputFile(const AtomicOutputFile &) = delete;
  AtomicOutputFile &operator=(const AtomicOutputFile &) = delete;

  std::ostream &Stream() { return stream_; }
  void Commit();

 private:
  std::string path_;
  std::string temp_path_;
  std::ofstream stream_;
  bool committed_ = false;
};

}  // namespace mvfe

#endif  // MVFE_UTIL_ATOMIC_FILE_H_
