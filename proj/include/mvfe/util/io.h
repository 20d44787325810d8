// mvfe/util/io.h

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

#ifndef MVFE_UTIL_IO_H_
#define MVFE_UTIL_IO_H_

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "mvfe/base/common.h"

namespace mvfe {

// All on-disk formats are little-endian; raw byte copies below assume a
// little-endian host.
static_assert(std::endian::native == std::endian::little,
              "big-endian hosts need byte swaps in util/io.h");

inline void WriteU32(std::ostream &os, uint32 v) {
  os.write(reinterpret_cast<const char *>(&v), 4);
}
inline void WriteF32(std::ostream &os, float v) {
  os.write(reinterpret_cast<const char *>(&v), 4);
}
inline void WriteF64(std::ostream &os, double v) {
  os.write(reinterpret_cast<const char *>(&v), 8);
}
inline void WriteU8(std::ostream &os, uint8_t v) {
  os.write(reinterpret_cast<const char *>(&v), 1);
}

// Readers throw InputError naming `what` at the current offset.
uint32 ReadU32(std::istream &is, const std::string &what);
float ReadF32(std::istream &is, const std::string &what);
double ReadF64(std::istream &is, const std::string &what);
uint8_t ReadU8(std::istream &is, const std::string &what);
void ReadBytes(std::istream &is, char *buf, size_t n, const std::string &what);

// Reads a 4-byte magic and checks it.
void ExpectMagic(std::istream &is, const char expect[4],
                 const std::string &path);

}  // namespace mvfe

#endif  // MVFE_UTIL_IO_H_
