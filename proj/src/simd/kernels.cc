// mvfe/simd/kernels.cc

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

#include "mvfe/simd/kernels.h"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#if defined(__x86_64__) || defined(_M_X64)
#define MVFE_X86 1
#include <immintrin.h>
#else
#define MVFE_X86 0
#endif

namespace mvfe {
namespace simd {

// ---------------------------------------------------------------- scalar

namespace {

double DotScalar(const double *a, const double *b, size_t n) {
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void AxpyScalar(double alpha, const double *x, double *y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double SumSqScalar(const double *x, size_t n) {
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double QuadDiagScalar(const double *x, const double *mu,
                      const double *inv_var, size_t n) {
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double d = x[i] - mu[i];
    s += d * d * inv_var[i];
  }
  return s;
}

void ScaleScalar(double alpha, double *x, size_t n) {
  for (size_t i = 0; i < n; ++i) x[i] *= alpha;
}

// ---------------------------------------------------------------- AVX2

#if MVFE_X86

__attribute__((target("avx2,fma")))
double HSum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

__attribute__((target("avx2,fma")))
double DotAvx2(const double *a, const double *b, size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                           acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                           acc0);
  }
  double s = HSum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

__attribute__((target("avx2,fma")))
void AxpyAvx2(double alpha, const double *x, double *y, size_t n) {
  __m256d va = _mm256_set1_pd(alpha);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

__attribute__((target("avx2,fma")))
double SumSqAvx2(const double *x, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = HSum(acc);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

__attribute__((target("avx2,fma")))
double QuadDiagAvx2(const double *x, const double *mu, const double *inv_var,
                    size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i),
                              _mm256_loadu_pd(mu + i));
    acc = _mm256_fmadd_pd(_mm256_mul_pd(d, d),
                          _mm256_loadu_pd(inv_var + i), acc);
  }
  double s = HSum(acc);
  for (; i < n; ++i) {
    double d = x[i] - mu[i];
    s += d * d * inv_var[i];
  }
  return s;
}

__attribute__((target("avx2,fma")))
void ScaleAvx2(double alpha, double *x, size_t n) {
  __m256d va = _mm256_set1_pd(alpha);
  size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

#endif  // MVFE_X86

// ---------------------------------------------------------------- dispatch

struct KernelTable {
  double (*dot)(const double *, const double *, size_t);
  void (*axpy)(double, const double *, double *, size_t);
  double (*sumsq)(const double *, size_t);
  double (*quad_diag)(const double *, const double *, const double *, size_t);
  void (*scale)(double, double *, size_t);
  Backend backend;
};

constexpr KernelTable kScalarTable = {DotScalar, AxpyScalar, SumSqScalar,
                                      QuadDiagScalar, ScaleScalar,
                                      Backend::kScalar};

#if MVFE_X86
constexpr KernelTable kAvx2Table = {DotAvx2, AxpyAvx2, SumSqAvx2,
                                    QuadDiagAvx2, ScaleAvx2, Backend::kAvx2};
#endif

bool Avx2Supported() {
#if MVFE_X86
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable *SelectTable() {
  const char *env = std::getenv("MVFE_SIMD");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return &kScalarTable;
#if MVFE_X86
    if (std::strcmp(env, "avx2") == 0 && Avx2Supported()) return &kAvx2Table;
#endif
  }
#if MVFE_X86
  if (Avx2Supported()) return &kAvx2Table;
#endif
  return &kScalarTable;
}

const KernelTable *g_table = SelectTable();

}  // namespace

Backend ActiveBackend() { return g_table->backend; }

const char *BackendName() {
  return g_table->backend == Backend::kAvx2 ? "avx2" : "scalar";
}

bool BackendAvailable(Backend b) {
  if (b == Backend::kScalar) return true;
  return Avx2Supported();
}

void ForceBackend(Backend b) {
  if (b == Backend::kScalar) {
    g_table = &kScalarTable;
    return;
  }
#if MVFE_X86
  if (Avx2Supported()) {
    g_table = &kAvx2Table;
    return;
  }
#endif
  throw std::runtime_error("simd backend unavailable on this machine");
}

double Dot(const double *a, const double *b, size_t n) {
  return g_table->dot(a, b, n);
}

void Axpy(double alpha, const double *x, double *y, size_t n) {
  g_table->axpy(alpha, x, y, n);
}

double SumSq(const double *x, size_t n) { return g_table->sumsq(x, n); }

double QuadDiag(const double *x, const double *mu, const double *inv_var,
                size_t n) {
  return g_table->quad_diag(x, mu, inv_var, n);
}

void Scale(double alpha, double *x, size_t n) { g_table->scale(alpha, x, n); }

void MatVec(const double *m, size_t rows, size_t n, const double *x,
            const double *bias, double *y) {
  for (size_t t = 0; t < rows; ++t)
    y[t] = g_table->dot(m + t * n, x, n) + (bias != nullptr ? bias[t] : 0.0);
}

}  // namespace simd
}  // namespace mvfe
