// tests/test_dsp.cc

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
#include <complex>
#include <random>
#include <vector>

#include "mvfe/base/common.h"
#include "mvfe/dsp/dct.h"
#include "mvfe/dsp/fft.h"
#include "mvfe/dsp/framing.h"
#include "mvfe/dsp/stft.h"

using namespace mvfe;

namespace {

// O(n^2) reference DFT; the oracle for the radix-2 implementation.
std::vector<std::complex<double>> DirectDft(
    const std::vector<std::complex<double>> &in) {
  size_t n = in.size();
  std::vector<std::complex<double>> out(n);
  for (size_t k = 0; k < n; k++) {
    std::complex<double> s = 0.0;
    for (size_t t = 0; t < n; t++)
      s += in[t] * std::polar(1.0, -2.0 * M_PI * double(k * t) / double(n));
    out[k] = s;
  }
  return out;
}

}  // namespace

TEST_CASE("frame count arithmetic") {
  // 1 s at 8 kHz, 25 ms window, 10 ms shift: 1 + (8000 - 200) / 80 = 98.
  CHECK(NumFrames(8000, 200, 80) == 98);
  CHECK(NumFrames(199, 200, 80) == 0);
  CHECK(NumFrames(200, 200, 80) == 1);
  CHECK(NumFrames(279, 200, 80) == 1);
  CHECK(NumFrames(280, 200, 80) == 2);
}

TEST_CASE("window functions have expected ends and peaks") {
  std::vector<double> hamming = MakeWindow(WindowFn::kHamming, 200);
  CHECK(hamming[0] == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(hamming[100] > 0.99);
  std::vector<double> rect = MakeWindow(WindowFn::kRectangular, 16);
  for (double w : rect) CHECK(w == 1.0);
  std::vector<double> povey = MakeWindow(WindowFn::kPovey, 200);
  CHECK(povey[0] == 0.0);
  CHECK(povey[100] > 0.99);
  CHECK(povey[50] == doctest::Approx(std::pow(
                         0.5 - 0.5 * std::cos(2.0 * M_PI * 50 / 199), 0.85))
                         .epsilon(1e-12));
}

TEST_CASE("fft matches the direct DFT oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {2, 8, 64, 256}) {
    std::vector<std::complex<double>> x(n);
    for (auto &v : x) v = {u(rng), u(rng)};
    std::vector<std::complex<double>> want = DirectDft(x);
    std::vector<std::complex<double>> got = x;
    Radix2Fft fft(n);
    fft.Forward(got.data());
    for (int k = 0; k < n; k++)
      CHECK(std::abs(got[k] - want[k]) < 1e-9 * n);
  }
}

TEST_CASE("fft rejects non-power-of-two sizes") {
  CHECK_THROWS_AS(Radix2Fft(100), ConfigError);
  CHECK_THROWS_AS(Radix2Fft(0), ConfigError);
}

TEST_CASE("power spectrum of a zero-padded frame matches the oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 256, in_len = 200;
  std::vector<double> frame(in_len);
  for (double &v : frame) v = u(rng);

  std::vector<std::complex<double>> padded(n, 0.0);
  for (int i = 0; i < in_len; i++) padded[i] = frame[i];
  auto spec = DirectDft(padded);

  Radix2Fft fft(n);
  std::vector<double> power(n / 2 + 1);
  fft.PowerSpectrum(frame.data(), in_len, power.data());
  for (int k = 0; k <= n / 2; k++)
    CHECK(power[k] == doctest::Approx(std::norm(spec[k])).epsilon(1e-9));
}

TEST_CASE("stft framing: one second at 8 kHz gives 98 frames") {
  Waveform wave(std::vector<double>(8000, 0.0), 8000);
  FramingConfig cfg;
  FeatureMatrix out = StftPower(wave, cfg);
  CHECK(out.rows == 98);
  CHECK(out.cols == 129);  // fft_size/2 + 1
}

TEST_CASE("stft of silence is all zero") {
  Waveform wave(std::vector<double>(4000, 0.0), 8000);
  FeatureMatrix out = StftPower(wave, FramingConfig());
  for (double v : out.data) CHECK(v == 0.0);
}

TEST_CASE("stft of a 1 kHz tone peaks at the right bin") {
  const int sr = 8000;
  std::vector<double> s(sr);
  for (int t = 0; t < sr; t++) s[t] = std::sin(2.0 * M_PI * 1000.0 * t / sr);
  FramingConfig cfg;
  FeatureMatrix out = StftPower(Waveform(s, sr), cfg);
  const int want_bin =
      static_cast<int>(std::lround(1000.0 / (double(sr) / cfg.fft_size)));
  for (int t = 0; t < out.rows; t++) {
    int arg = 0;
    for (int k = 1; k < out.cols; k++)
      if (out.At(t, k) > out.At(t, arg)) arg = k;
    CHECK(arg == want_bin);
  }
}

TEST_CASE("stft rejects short and non-finite input") {
  CHECK_THROWS_WITH_AS(
      StftPower(Waveform(std::vector<double>(100, 0.0), 8000),
                FramingConfig()),
      doctest::Contains("utterance too short"), InputError);
  std::vector<double> bad(4000, 0.0);
  bad[17] = std::nan("");
  CHECK_THROWS_AS(StftPower(Waveform(bad, 8000), FramingConfig()),
                  InputError);
}

TEST_CASE("dither is reproducible and disabled by default") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> s(4000);
  for (double &v : s) v = u(rng);
  FramingConfig cfg;
  cfg.dither = 0.01;
  FeatureMatrix a = StftPower(Waveform(s, 8000), cfg);
  FeatureMatrix b = StftPower(Waveform(s, 8000), cfg);
  CHECK(a.data == b.data);
  cfg.dither_seed = 2;
  FeatureMatrix c = StftPower(Waveform(s, 8000), cfg);
  CHECK(a.data != c.data);
}

TEST_CASE("dct of a unit impulse, d = 4") {
  // Row k of the orthonormal DCT-II at n = 0: c(k) cos(pi k / (2 d)).
  FeatureMatrix x(1, 4);
  x.At(0, 0) = 1.0;
  FeatureMatrix y = DctRows(x);
  CHECK(y.At(0, 0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(y.At(0, 1) == doctest::Approx(0.65328148243818818).epsilon(1e-10));
  CHECK(y.At(0, 2) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(y.At(0, 3) == doctest::Approx(0.27059805007309851).epsilon(1e-10));
}

TEST_CASE("dct of all-ones is DC only") {
  FeatureMatrix x(1, 40);
  for (int j = 0; j < 40; j++) x.At(0, j) = 1.0;
  FeatureMatrix y = DctRows(x);
  CHECK(y.At(0, 0) == doctest::Approx(std::sqrt(40.0)).epsilon(1e-12));
  for (int j = 1; j < 40; j++) CHECK(std::abs(y.At(0, j)) < 1e-12);

  FeatureMatrix back = IdctRows(y);
  for (int j = 0; j < 40; j++)
    CHECK(back.At(0, j) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dct round trip and Parseval on random rows") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  FeatureMatrix x(50, 40);
  for (double &v : x.data) v = u(rng);
  FeatureMatrix y = DctRows(x);
  FeatureMatrix back = IdctRows(y);
  for (size_t i = 0; i < x.data.size(); i++)
    CHECK(std::abs(back.data[i] - x.data[i]) <= 1e-10);

  for (int t = 0; t < x.rows; t++) {
    double nx = 0.0, ny = 0.0;
    for (int j = 0; j < x.cols; j++) {
      nx += x.At(t, j) * x.At(t, j);
      ny += y.At(t, j) * y.At(t, j);
    }
    CHECK(std::sqrt(nx) == doctest::Approx(std::sqrt(ny)).epsilon(1e-10));
  }

  // The other composition direction is also the identity.
  FeatureMatrix z = DctRows(IdctRows(x));
  for (size_t i = 0; i < x.data.size(); i++)
    CHECK(std::abs(z.data[i] - x.data[i]) <= 1e-10);
}

TEST_CASE("dct matrix is orthonormal up to d = 128") {
  for (int d : {2, 3, 40, 128}) {
    std::vector<double> m = DctMatrix(d);
    for (int i = 0; i < d; i++) {
      for (int j = 0; j < d; j++) {
        double s = 0.0;
        for (int k = 0; k < d; k++) s += m[i * d + k] * m[j * d + k];
        CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("framing config validation") {
  FramingConfig cfg;
  cfg.shift_ms = 30.0;  // shift > window
  CHECK_THROWS_AS(cfg.Validate(8000), ConfigError);
  cfg = FramingConfig();
  cfg.fft_size = 128;  // below the 200-sample window
  CHECK_THROWS_AS(cfg.Validate(8000), ConfigError);
  cfg = FramingConfig();
  cfg.preemphasis = 1.0;
  CHECK_THROWS_AS(cfg.Validate(8000), ConfigError);
}
