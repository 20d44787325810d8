// tests/test_simd.cc

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
#include <random>
#include <vector>

#include "mvfe/simd/kernels.h"

using namespace mvfe;

namespace {

std::vector<double> RandomVec(std::mt19937_64 &rng, size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (double &x : v) x = u(rng);
  return v;
}

// Both backends run the same math; differences come only from
// reassociation, so a tight relative tolerance is appropriate.
constexpr double kRelTol = 1e-12;

bool Close(double a, double b) {
  return std::abs(a - b) <= kRelTol * (1.0 + std::abs(a) + std::abs(b));
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(simd::BackendAvailable(simd::Backend::kScalar));
}

TEST_CASE("backends agree on every kernel across sizes") {
  if (!simd::BackendAvailable(simd::Backend::kAvx2)) {
    MESSAGE("avx2 unavailable on this machine; scalar-only run");
    return;
  }
  std::mt19937_64 rng(42);
  // Sizes straddle the vector width: remainders 0..3 all hit.
  for (size_t n : {size_t(1), size_t(3), size_t(4), size_t(7), size_t(8),
                   size_t(15), size_t(64), size_t(257), size_t(1000)}) {
    std::vector<double> a = RandomVec(rng, n);
    std::vector<double> b = RandomVec(rng, n);
    std::vector<double> iv = RandomVec(rng, n);
    for (double &x : iv) x = std::abs(x) + 0.5;

    simd::ForceBackend(simd::Backend::kScalar);
    double dot_s = simd::Dot(a.data(), b.data(), n);
    double ss_s = simd::SumSq(a.data(), n);
    double qd_s = simd::QuadDiag(a.data(), b.data(), iv.data(), n);
    std::vector<double> y_s = b;
    simd::Axpy(0.7, a.data(), y_s.data(), n);
    std::vector<double> sc_s = a;
    simd::Scale(1.3, sc_s.data(), n);

    simd::ForceBackend(simd::Backend::kAvx2);
    double dot_v = simd::Dot(a.data(), b.data(), n);
    double ss_v = simd::SumSq(a.data(), n);
    double qd_v = simd::QuadDiag(a.data(), b.data(), iv.data(), n);
    std::vector<double> y_v = b;
    simd::Axpy(0.7, a.data(), y_v.data(), n);
    std::vector<double> sc_v = a;
    simd::Scale(1.3, sc_v.data(), n);

    CHECK_MESSAGE(Close(dot_s, dot_v), "Dot n=", n);
    CHECK_MESSAGE(Close(ss_s, ss_v), "SumSq n=", n);
    CHECK_MESSAGE(Close(qd_s, qd_v), "QuadDiag n=", n);
    for (size_t i = 0; i < n; i++) {
      CHECK(Close(y_s[i], y_v[i]));
      CHECK(Close(sc_s[i], sc_v[i]));
    }
  }
}

TEST_CASE("matvec agrees between backends and against a plain loop") {
  std::mt19937_64 rng(7);
  const size_t rows = 13, n = 37;
  std::vector<double> m = RandomVec(rng, rows * n);
  std::vector<double> x = RandomVec(rng, n);
  std::vector<double> bias = RandomVec(rng, rows);

  std::vector<double> want(rows);
  for (size_t t = 0; t < rows; t++) {
    double s = bias[t];
    for (size_t i = 0; i < n; i++) s += m[t * n + i] * x[i];
    want[t] = s;
  }

  for (simd::Backend bk : {simd::Backend::kScalar, simd::Backend::kAvx2}) {
    if (!simd::BackendAvailable(bk)) continue;
    simd::ForceBackend(bk);
    std::vector<double> got(rows);
    simd::MatVec(m.data(), rows, n, x.data(), bias.data(), got.data());
    for (size_t t = 0; t < rows; t++) CHECK(Close(want[t], got[t]));
    // Null bias means zero bias.
    simd::MatVec(m.data(), rows, n, x.data(), nullptr, got.data());
    for (size_t t = 0; t < rows; t++) CHECK(Close(want[t] - bias[t], got[t]));
  }
}

TEST_CASE("dot of empty vectors is zero") {
  simd::ForceBackend(simd::Backend::kScalar);
  CHECK(simd::Dot(nullptr, nullptr, 0) == 0.0);
  CHECK(simd::SumSq(nullptr, 0) == 0.0);
}

TEST_CASE("force backend round trip, active name matches") {
  simd::ForceBackend(simd::Backend::kScalar);
  CHECK(simd::ActiveBackend() == simd::Backend::kScalar);
  CHECK(std::string(simd::BackendName()) == "scalar");
  if (simd::BackendAvailable(simd::Backend::kAvx2)) {
    simd::ForceBackend(simd::Backend::kAvx2);
    CHECK(simd::ActiveBackend() == simd::Backend::kAvx2);
    CHECK(std::string(simd::BackendName()) == "avx2");
  }
}
