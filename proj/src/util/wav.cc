// mvfe/util/wav.cc

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

#include "mvfe/util/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "mvfe/base/common.h"
#include "mvfe/util/atomic_file.h"
#include "mvfe/util/io.h"

namespace mvfe {

namespace {

uint32_t ReadChunkU32(std::istream &is, const std::string &path) {
  return ReadU32(is, "wav field in " + path);
}

uint16_t ReadChunkU16(std::istream &is, const std::string &path) {
  unsigned char b[2];
  ReadBytes(is, reinterpret_cast<char *>(b), 2, "wav field in " + path);
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

void WriteU16(std::ostream &os, uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  os.write(b, 2);
}

}  // namespace

Waveform ReadWav(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open wav file: " + path);

  char tag[4];
  ReadBytes(is, tag, 4, "RIFF tag in " + path);
  if (std::string(tag, 4) != "RIFF")
    throw InputError("not a RIFF file: " + path);
  ReadChunkU32(is, path);  // overall size, unused
  ReadBytes(is, tag, 4, "WAVE tag in " + path);
  if (std::string(tag, 4) != "WAVE")
    throw InputError("not a WAVE file: " + path);

  bool have_fmt = false;
  uint16_t channels = 0, bits = 0, format = 0;
  uint32_t sample_rate = 0;

  // Chunk scan.  fmt must precede data; anything unrecognized is skipped.
  for (;;) {
    if (is.peek() == EOF)
      throw InputError("wav file has no data chunk: " + path);
    ReadBytes(is, tag, 4, "chunk tag in " + path);
    uint32_t size = ReadChunkU32(is, path);
    std::string name(tag, 4);
    if (name == "fmt ") {
      if (size < 16) throw InputError("fmt chunk too small in " + path);
      format = ReadChunkU16(is, path);
      channels = ReadChunkU16(is, path);
      sample_rate = ReadChunkU32(is, path);
      ReadChunkU32(is, path);  // byte rate
      ReadChunkU16(is, path);  // block align
      bits = ReadChunkU16(is, path);
      if (size > 16) is.seekg(size - 16, std::ios::cur);
      have_fmt = true;
    } else if (name == "data") {
      if (!have_fmt)
        throw InputError("data chunk before fmt chunk in " + path);
      if (format != 1)
        throw InputError("wav format " + std::to_string(format) +
                         " unsupported (want 16-bit PCM): " + path);
      if (channels != 1)
        throw InputError("wav has " + std::to_string(channels) +
                         " channels, only mono is supported: " + path);
      if (bits != 16)
        throw InputError("wav has " + std::to_string(bits) +
                         "-bit samples, only 16-bit is supported: " + path);
      uint32_t num_samples = size / 2;
      Waveform wave;
      wave.sample_rate = static_cast<int32>(sample_rate);
      wave.samples.resize(num_samples);
      std::vector<char> raw(size);
      ReadBytes(is, raw.data(), size, "wav data in " + path);
      for (uint32_t i = 0; i < num_samples; i++) {
        int16_t s = static_cast<int16_t>(
            static_cast<unsigned char>(raw[2 * i]) |
            (static_cast<unsigned char>(raw[2 * i + 1]) << 8));
        wave.samples[i] = s / 32768.0;
      }
      return wave;
    } else {
      // RIFF chunks are word-aligned.
      is.seekg(size + (size & 1), std::ios::cur);
      if (!is) throw InputError("truncated chunk '" + name + "' in " + path);
    }
  }
}

void WriteWav(const std::string &path, const Waveform &wave) {
  if (wave.sample_rate <= 0)
    throw InputError("wav write: bad sample rate");
  AtomicOutputFile out(path);
  std::ostream &os = out.Stream();

  uint32_t n = static_cast<uint32_t>(wave.samples.size());
  uint32_t data_bytes = n * 2;
  os.write("RIFF", 4);
  WriteU32(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  WriteU32(os, 16);
  WriteU16(os, 1);  // PCM
  WriteU16(os, 1);  // mono
  WriteU32(os, static_cast<uint32_t>(wave.sample_rate));
  WriteU32(os, static_cast<uint32_t>(wave.sample_rate) * 2);
  WriteU16(os, 2);
  WriteU16(os, 16);
  os.write("data", 4);
  WriteU32(os, data_bytes);
  for (uint32_t i = 0; i < n; i++) {
    double v = std::clamp(wave.samples[i], -1.0, 32767.0 / 32768.0);
    int16_t s = static_cast<int16_t>(std::lrint(v * 32768.0));
    char b[2] = {static_cast<char>(s & 0xff),
                 static_cast<char>((s >> 8) & 0xff)};
    os.write(b, 2);
  }
  out.Commit();
}

}  // namespace mvfe
