// mvfe/simd/kernels.h

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

#ifndef MVFE_SIMD_KERNELS_H_
#define MVFE_SIMD_KERNELS_H_

#include <cstddef>
#include <string>

// Arithmetic inner loops shared by the feature, GMM, adaptation, and
// network code.  Each kernel has a scalar reference implementation and,
// on x86-64, an AVX2+FMA variant; the backend is chosen once at startup
// from CPU capabilities.  Set MVFE_SIMD=scalar (or avx2) in the
// environment to force a backend.  Scalar and AVX2 results may differ in
// the last bits (FMA, different summation order); the equivalence tests
// bound the difference.

namespace mvfe {
namespace simd {

enum class Backend { kScalar, kAvx2 };

// Backend selected at startup (capability probe + MVFE_SIMD override).
Backend ActiveBackend();
const char *BackendName();

// True if the named backend can run on this machine.
bool BackendAvailable(Backend b);

// Force a backend (tests only).  Throws if unavailable.
void ForceBackend(Backend b);

// sum_i a[i] * b[i]
double Dot(const double *a, const double *b, size_t n);

// y[i] += alpha * x[i]
void Axpy(double alpha, const double *x, double *y, size_t n);

// sum_i x[i]^2
double SumSq(const double *x, size_t n);

// sum_i (x[i] - mu[i])^2 * inv_var[i]   (diagonal Gaussian quadratic form)
double QuadDiag(const double *x, const double *mu, const double *inv_var,
                size_t n);

// x[i] *= alpha
void Scale(double alpha, double *x, size_t n);

// y[t] = dot(m[t*n .. t*n+n), x) + (bias ? bias[t] : 0), t = 0..rows-1
void MatVec(const double *m, size_t rows, size_t n, const double *x,
            const double *bias, double *y);

}  // namespace simd
}  // namespace mvfe

#endif  // MVFE_SIMD_KERNELS_H_
