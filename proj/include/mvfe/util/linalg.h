// mvfe/util/linalg.h

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

#ifndef MVFE_UTIL_LINALG_H_
#define MVFE_UTIL_LINALG_H_

#include <vector>

#include "mvfe/base/common.h"

namespace mvfe {

/// Dense helpers for the small matrices this codebase needs (d <= 81).
/// Row-major storage throughout.

/// LU with partial pivoting.  Throws NumericError on an exactly
/// singular matrix.
struct LuFactors {
  int32 dim = 0;
  std::vector<double> lu;    // packed L (unit diagonal) and U
  std::vector<int32> piv;    // row swaps applied at each step
  double det_sign = 1.0;

  double Det() const;
  // inv must hold dim*dim entries.
  void Inverse(double *inv) const;
};

LuFactors LuFactor(const double *a, int32 dim);

/// Cholesky of a symmetric positive definite matrix; lower factor L.
/// Throws NumericError if a pivot is not strictly positive.
std::vector<double> CholeskyFactor(const double *a, int32 dim);

// Solves L L^T x = b in place of x.
void CholeskySolve(const std::vector<double> &chol_l, int32 dim,
                   const double *b, double *x);

}  // namespace mvfe

#endif  // MVFE_UTIL_LINALG_H_
