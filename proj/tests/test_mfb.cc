// tests/test_mfb.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "mvfe/base/common.h"
#include "mvfe/feat/mel_banks.h"
#include "mvfe/feat/mfb.h"

using namespace mvfe;

namespace {

// The test derives filter centers from the mel spacing formula itself
// rather than asking the bank, so center placement is checked, not
// assumed.
double MelFromHz(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double HzFromMel(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

double OracleCenter(const MelBankConfig &cfg, int32 j) {
  double lo = MelFromHz(cfg.f_min), hi = MelFromHz(cfg.f_max);
  double dm = (hi - lo) / (cfg.num_filters + 1);
  return HzFromMel(lo + dm * (j + 1));
}

Waveform Tone(double freq, double seconds, int32 sr) {
  std::vector<double> s(static_cast<size_t>(seconds * sr));
  for (size_t t = 0; t < s.size(); t++)
    s[t] = 0.5 * std::sin(2.0 * M_PI * freq * t / sr);
  return Waveform(std::move(s), sr);
}

}  // namespace

TEST_CASE("silence maps every cell to log(log_floor)") {
  Waveform wave(std::vector<double>(8000, 0.0), 8000);
  MelBankConfig bank;
  FeatureMatrix out = ExtractMfb(wave, FramingConfig(), bank);
  CHECK(out.rows == 98);
  CHECK(out.cols == 40);
  for (double v : out.data)
    CHECK(v == doctest::Approx(std::log(1e-10)).epsilon(1e-12));
}

TEST_CASE("tone at a filter center wins that filter's argmax") {
  MelBankConfig bank;
  FramingConfig framing;
  for (int32 j : {0, 9, 19, 29, 39}) {
    double fc = OracleCenter(bank, j);
    FeatureMatrix out = ExtractMfb(Tone(fc, 1.0, 8000), framing, bank);
    int hits = 0, interior = 0;
    for (int32 t = 1; t + 1 < out.rows; t++) {
      interior++;
      int32 arg = 0;
      for (int32 k = 1; k < out.cols; k++)
        if (out.At(t, k) > out.At(t, arg)) arg = k;
      if (arg == j) hits++;
    }
    CHECK_MESSAGE(hits >= (interior * 95) / 100, "filter ", j, " center ",
                  fc, " hits ", hits, "/", interior);
  }
}

TEST_CASE("energy scaling never decreases un-floored cells") {
  Waveform wave = Tone(700.0, 0.5, 8000);
  // Mix in a second component so several filters carry energy.
  for (size_t t = 0; t < wave.samples.size(); t++)
    wave.samples[t] += 0.2 * std::sin(2.0 * M_PI * 2200.0 * t / 8000.0);
  Waveform louder = wave;
  for (double &s : louder.samples) s *= 3.0;

  MelBankConfig bank;
  FeatureMatrix a = ExtractMfb(wave, FramingConfig(), bank);
  FeatureMatrix b = ExtractMfb(louder, FramingConfig(), bank);
  const double floor_log = std::log(1e-10);
  for (size_t i = 0; i < a.data.size(); i++) {
    if (a.data[i] > floor_log + 1e-9) {
      CHECK(b.data[i] >= a.data[i] - 1e-12);
    } else {
      CHECK(b.data[i] >= floor_log - 1e-12);
    }
  }
  CHECK(a.AllFinite());
  CHECK(b.AllFinite());
}

TEST_CASE("filter weights are non-negative with no spectral holes") {
  MelBankConfig cfg;
  MelBanks banks(cfg, 8000, 256);
  CHECK(banks.NumFilters() == 40);
  const double bin_hz = 8000.0 / 256.0;
  std::vector<double> coverage(129, 0.0);
  for (int32 j = 0; j < banks.NumFilters(); j++) {
    const std::vector<double> &w = banks.Weights(j);
    REQUIRE(w.size() == 129);
    for (double x : w) CHECK(x >= 0.0);
    for (size_t k = 0; k < w.size(); k++) coverage[k] += w[k];
  }
  for (int32 k = 0; k <= 128; k++) {
    double hz = k * bin_hz;
    if (hz > cfg.f_min && hz < cfg.f_max) CHECK(coverage[k] > 0.0);
  }
}

TEST_CASE("centers agree with the mel spacing oracle") {
  MelBankConfig cfg;
  MelBanks banks(cfg, 8000, 256);
  for (int32 j = 0; j < cfg.num_filters; j++)
    CHECK(banks.CenterFreq(j) ==
          doctest::Approx(OracleCenter(cfg, j)).epsilon(1e-12));
}

TEST_CASE("config validation rejects bad band edges") {
  MelBankConfig cfg;
  cfg.f_max = 4200.0;  // above Nyquist at 8 kHz
  CHECK_THROWS_AS(cfg.Validate(8000), ConfigError);
  cfg = MelBankConfig();
  cfg.f_min = 3900.0;  // f_min >= f_max
  CHECK_THROWS_AS(cfg.Validate(8000), ConfigError);
  cfg = MelBankConfig();
  cfg.num_filters = 1;
  CHECK_THROWS_AS(cfg.Validate(8000), ConfigError);
  cfg = MelBankConfig();
  cfg.log_floor = 0.0;
  CHECK_THROWS_AS(cfg.Validate(8000), ConfigError);
}
