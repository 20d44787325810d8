// mvfe/util/wav.h

// Copyright 2026  MVFE Authors

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

#ifndef MVFE_UTIL_WAV_H_
#define MVFE_UTIL_WAV_H_

#include <string>

#include "mvfe/base/feature_matrix.h"

namespace mvfe {

// Reads a RIFF/WAVE file.  Only 16-bit PCM mono is accepted; anything else
// raises InputError.  Unknown chunks are skipped.  Samples are scaled to
// [-1, 1) by dividing by 32768.
Waveform ReadWav(const std::string &path);

// Writes 16-bit PCM mono.  Samples are clipped to [-1, 1) before quantizing.
void WriteWav(const std::string &path, const Waveform &wave);

}  // namespace mvfe

#endif  // MVFE_UTIL_WAV_H_
