// mvfe/util/linalg.cc

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

#include "mvfe/util/linalg.h"

#include <cmath>

namespace mvfe {

LuFactors LuFactor(const double *a, int32 dim) {
  LuFactors f;
  f.dim = dim;
  f.lu.assign(a, a + static_cast<size_t>(dim) * dim);
  f.piv.resize(dim);
  double *lu = f.lu.data();
  for (int32 k = 0; k < dim; k++) {
    int32 p = k;
    double best = std::abs(lu[static_cast<size_t>(k) * dim + k]);
    for (int32 r = k + 1; r < dim; r++) {
      double v = std::abs(lu[static_cast<size_t>(r) * dim + k]);
      if (v > best) { best = v; p = r; }
    }
    if (best == 0.0)
      throw NumericError("LuFactor: singular matrix at pivot " +
                         std::to_string(k));
    f.piv[k] = p;
    if (p != k) {
      for (int32 j = 0; j < dim; j++)
        std::swap(lu[static_cast<size_t>(k) * dim + j],
                  lu[static_cast<size_t>(p) * dim + j]);
      f.det_sign = -f.det_sign;
    }
    double pivot = lu[static_cast<size_t>(k) * dim + k];
    for (int32 r = k + 1; r < dim; r++) {
      double m = lu[static_cast<size_t>(r) * dim + k] / pivot;
      lu[static_cast<size_t>(r) * dim + k] = m;
      for (int32 j = k + 1; j < dim; j++)
        lu[static_cast<size_t>(r) * dim + j] -=
            m * lu[static_cast<size_t>(k) * dim + j];
    }
  }
  return f;
}

double LuFactors::Det() const {
  double det = det_sign;
  for (int32 k = 0; k < dim; k++) det *= lu[static_cast<size_t>(k) * dim + k];
  return det;
}

void LuFactors::Inverse(double *inv) const {
  // Solve A x = e_j column by column.
  std::vector<double> col(dim);
  for (int32 j = 0; j < dim; j++) {
    for (int32 i = 0; i < dim; i++) col[i] = (i == j) ? 1.0 : 0.0;
    for (int32 k = 0; k < dim; k++)
      if (piv[k] != k) std::swap(col[k], col[piv[k]]);
    for (int32 i = 1; i < dim; i++)
      for (int32 k = 0; k < i; k++)
        col[i] -= lu[static_cast<size_t>(i) * dim + k] * col[k];
    for (int32 i = dim - 1; i >= 0; i--) {
      for (int32 k = i + 1; k < dim; k++)
        col[i] -= lu[static_cast<size_t>(i) * dim + k] * col[k];
      col[i] /= lu[static_cast<size_t>(i) * dim + i];
    }
    for (int32 i = 0; i < dim; i++)
      inv[static_cast<size_t>(i) * dim + j] = col[i];
  }
}

std::vector<double> CholeskyFactor(const double *a, int32 dim) {
  std::vector<double> l(static_cast<size_t>(dim) * dim, 0.0);
  for (int32 i = 0; i < dim; i++) {
    for (int32 j = 0; j <= i; j++) {
      double s = a[static_cast<size_t>(i) * dim + j];
      for (int32 k = 0; k < j; k++)
        s -= l[static_cast<size_t>(i) * dim + k] *
             l[static_cast<size_t>(j) * dim + k];
      if (i == j) {
        if (s <= 0.0)
          throw NumericError("CholeskyFactor: matrix not positive definite "
                             "at pivot " + std::to_string(i));
        l[static_cast<size_t>(i) * dim + i] = std::sqrt(s);
      } else {
        l[static_cast<size_t>(i) * dim + j] =
            s / l[static_cast<size_t>(j) * dim + j];
      }
    }
  }
  return l;
}

void CholeskySolve(const std::vector<double> &chol_l, int32 dim,
                   const double *b, double *x) {
  const double *l = chol_l.data();
  // L y = b
  for (int32 i = 0; i < dim; i++) {
    double s = b[i];
    for (int32 k = 0; k < i; k++)
      s -= l[static_cast<size_t>(i) * dim + k] * x[k];
    x[i] = s / l[static_cast<size_t>(i) * dim + i];
  }
  // L^T x = y
  for (int32 i = dim - 1; i >= 0; i--) {
    double s = x[i];
    for (int32 k = i + 1; k < dim; k++)
      s -= l[static_cast<size_t>(k) * dim + i] * x[k];
    x[i] = s / l[static_cast<size_t>(i) * dim + i];
  }
}

}  // namespace mvfe
