// mvfe/base/common.h

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

#ifndef MVFE_BASE_COMMON_H_
#define MVFE_BASE_COMMON_H_

#include <cstdint>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mvfe {

using int32 = std::int32_t;
using uint32 = std::uint32_t;
using int64 = std::int64_t;
using uint64 = std::uint64_t;

// Bad or malformed data: unreadable files, dimension mismatches, inputs
// violating an operation's preconditions.  The CLI maps this to exit 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string &msg) : std::runtime_error(msg) {}
};

// Invalid configuration values (e.g. f_max above Nyquist).  Exit 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

// Numeric failure during computation (non-finite loss, singular
// accumulators after regularization).  Exit 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string &msg) : std::runtime_error(msg) {}
};

// Diagnostics go to stderr only; data goes to files.
#define MVFE_LOG(msg)                                          \
  do {                                                         \
    std::ostringstream os__;                                   \
    os__ << "LOG (" << __func__ << "): " << msg << std::endl;  \
    std::cerr << os__.str();                                   \
  } while (0)

#define MVFE_WARN(msg)                                         \
  do {                                                         \
    std::ostringstream os__;                                   \
    os__ << "WARNING (" << __func__ << "): " << msg            \
         << std::endl;                                         \
    std::cerr << os__.str();                                   \
  } while (0)

}  // namespace mvfe

#endif  // MVFE_BASE_COMMON_H_
