// mvfe/util/io.cc

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

#include "mvfe/util/io.h"

namespace mvfe {

void ReadBytes(std::istream &is, char *buf, size_t n,
               const std::string &what) {
  std::streampos at = is.tellg();
  is.read(buf, static_cast<std::streamsize>(n));
  if (!is || static_cast<size_t>(is.gcount()) != n)
    throw InputError("truncated read of " + what + " at byte offset " +
                     std::to_string(static_cast<long long>(at)));
}

uint32 ReadU32(std::istream &is, const std::string &what) {
  uint32 v;
  ReadBytes(is, reinterpret_cast<char *>(&v), 4, what);
  return v;
}

float ReadF32(std::istream &is, const std::string &what) {
  float v;
  ReadBytes(is, reinterpret_cast<char *>(&v), 4, what);
  return v;
}

double ReadF64(std::istream &is, const std::string &what) {
  double v;
  ReadBytes(is, reinterpret_cast<char *>(&v), 8, what);
  return v;
}

uint8_t ReadU8(std::istream &is, const std::string &what) {
  uint8_t v;
  ReadBytes(is, reinterpret_cast<char *>(&v), 1, what);
  return v;
}

void ExpectMagic(std::istream &is, const char expect[4],
                 const std::string &path) {
  char got[4];
  ReadBytes(is, got, 4, "magic of " + path);
  if (std::memcmp(got, expect, 4) != 0)
    throw InputError(path + ": bad magic, expected '" +
                     std::string(expect, 4) + "' got '" + std::string(got, 4) +
                     "'");
}

}  // namespace mvfe
