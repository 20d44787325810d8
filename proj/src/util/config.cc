// mvfe/util/config.cc

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

#include "mvfe/util/config.h"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace mvfe {

namespace {

struct Entry {
  std::string key;
  std::function<void(PipelineConfig *, const std::string &)> set;
  std::function<std::string(const PipelineConfig &)> get;
};

double ParseReal(const std::string &key, const std::string &value) {
  try {
    size_t used;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception &) {
    throw ConfigError("config: bad real for '" + key + "': '" + value + "'");
  }
}

int32 ParseInt(const std::string &key, const std::string &value) {
  try {
    size_t used;
    long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return static_cast<int32>(v);
  } catch (const std::exception &) {
    throw ConfigError("config: bad integer for '" + key + "': '" + value +
                      "'");
  }
}

bool ParseBool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: bad boolean for '" + key + "': '" + value + "'");
}

std::string FormatReal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

#define REAL_ENTRY(name, field)                                           \
  Entry{name,                                                             \
        [](PipelineConfig *c, const std::string &v) {                     \
          c->field = ParseReal(name, v);                                  \
        },                                                                \
        [](const PipelineConfig &c) { return FormatReal(c.field); }}
#define INT_ENTRY(name, field)                                            \
  Entry{name,                                                             \
        [](PipelineConfig *c, const std::string &v) {                     \
          c->field = ParseInt(name, v);                                   \
        },                                                                \
        [](const PipelineConfig &c) { return std::to_string(c.field); }}
#define BOOL_ENTRY(name, field)                                           \
  Entry{name,                                                             \
        [](PipelineConfig *c, const std::string &v) {                     \
          c->field = ParseBool(name, v);                                  \
        },                                                                \
        [](const PipelineConfig &c) {                                     \
          return c.field ? std::string("true") : std::string("false");    \
        }}

const std::vector<Entry> &Registry() {
  static const std::vector<Entry> entries = {
      REAL_ENTRY("framing.window_ms", framing.window_ms),
      REAL_ENTRY("framing.shift_ms", framing.shift_ms),
      Entry{"framing.window_fn",
            [](PipelineConfig *c, const std::string &v) {
              c->framing.window_fn = WindowFnFromString(v);
            },
            [](const PipelineConfig &c) {
              return WindowFnToString(c.framing.window_fn);
            }},
      REAL_ENTRY("framing.preemphasis", framing.preemphasis),
      INT_ENTRY("framing.fft_size", framing.fft_size),
      REAL_ENTRY("framing.dither", framing.dither),
      INT_ENTRY("framing.dither_seed", framing.dither_seed),
      INT_ENTRY("mfb.num_filters", mel.num_filters),
      REAL_ENTRY("mfb.f_min", mel.f_min),
      REAL_ENTRY("mfb.f_max", mel.f_max),
      REAL_ENTRY("mfb.log_floor", mel.log_floor),
      INT_ENTRY("doc.num_channels", gammatone.num_channels),
      REAL_ENTRY("doc.f_min", gammatone.f_min),
      REAL_ENTRY("doc.f_max", gammatone.f_max),
      REAL_ENTRY("doc.zeta", doc_zeta),
      REAL_ENTRY("doc.compression", doc_compression),
      INT_ENTRY("gmm.num_comps", gmm.num_comps),
      INT_ENTRY("gmm.iters", gmm.iters),
      REAL_ENTRY("gmm.variance_floor", gmm.variance_floor),
      INT_ENTRY("fmllr.sweeps", fmllr.sweeps),
      REAL_ENTRY("fmllr.min_frames", fmllr.min_frames),
      INT_ENTRY("splice.left", splice_left),
      INT_ENTRY("splice.right", splice_right),
      INT_ENTRY("net.freq_bands", net.freq_bands),
      INT_ENTRY("net.context", net.context),
      INT_ENTRY("net.num_filters", net.num_filters),
      INT_ENTRY("net.kernel", net.kernel),
      INT_ENTRY("net.pool", net.pool),
      INT_ENTRY("net.art_dim", net.art_dim),
      INT_ENTRY("net.art_units", net.art_units),
      INT_ENTRY("net.hidden_layers", net.hidden_layers),
      INT_ENTRY("net.hidden_units", net.hidden_units),
      INT_ENTRY("net.num_outputs", net.num_outputs),
      BOOL_ENTRY("net.art_branch", net.art_branch),
      REAL_ENTRY("train.initial_lr", schedule.initial_lr),
      INT_ENTRY("train.constant_iters", schedule.constant_iters),
      INT_ENTRY("train.minibatch", schedule.minibatch),
      INT_ENTRY("train.max_epochs", schedule.max_epochs),
      REAL_ENTRY("train.improve_threshold", schedule.improve_threshold),
      REAL_ENTRY("rover.scale", rover.scale),
      INT_ENTRY("rover.depth_cap", rover.depth_cap),
  };
  return entries;
}

#undef REAL_ENTRY
#undef INT_ENTRY
#undef BOOL_ENTRY

std::string Trim(const std::string &s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void PipelineConfig::Set(const std::string &key, const std::string &value) {
  for (const Entry &entry : Registry()) {
    if (entry.key == key) {
      entry.set(this, value);
      return;
    }
  }
  throw ConfigError("config: unknown key '" + key + "'");
}

void PipelineConfig::LoadFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open config file " + path);
  std::string line;
  int64 line_no = 0;
  while (std::getline(is, line)) {
    line_no++;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": empty key or value");
    try {
      Set(key, value);
    } catch (const ConfigError &err) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": " +
                        err.what());
    }
  }
}

std::string PipelineConfig::Dump() const {
  std::ostringstream os;
  for (const Entry &entry : Registry())
    os << entry.key << " = " << entry.get(*this) << "\n";
  return os.str();
}

}  // namespace mvfe
