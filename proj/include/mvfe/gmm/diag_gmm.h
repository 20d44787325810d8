// mvfe/gmm/diag_gmm.h

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

#ifndef MVFE_GMM_DIAG_GMM_H_
#define MVFE_GMM_DIAG_GMM_H_

#include <string>
#include <vector>

#include "mvfe/base/common.h"

namespace mvfe {

/// Diagonal-covariance Gaussian mixture.  Weights sum to one; every
/// variance sits at or above the floor used in training.  Likelihoods
/// are computed in the log domain throughout.
class DiagGmm {
 public:
  DiagGmm() = default;
  DiagGmm(int32 num_comps, int32 dim);

  int32 NumComps() const { return num_comps_; }
  int32 Dim() const { return dim_; }

  double &Weight(int32 m) { return weights_[m]; }
  double Weight(int32 m) const { return weights_[m]; }
  double *Mean(int32 m) { return means_.data() + static_cast<size_t>(m) * dim_; }
  const double *Mean(int32 m) const {
    return means_.data() + static_cast<size_t>(m) * dim_;
  }
  double *Var(int32 m) { return vars_.data() + static_cast<size_t>(m) * dim_; }
  const double *Var(int32 m) const {
    return vars_.data() + static_cast<size_t>(m) * dim_;
  }

  // Throws ConfigError if weights or variances violate the invariants.
  void Validate() const;

  // Call after any edit to weights/means/vars; refreshes cached
  // inverse variances and per-component log normalizers.
  void ComputeDerived();

  // log p(x) = logsumexp_m [log w_m + log N(x; mu_m, var_m)].
  double LogLikelihood(const double *frame, int32 dim) const;

  // Per-component posteriors; returns log p(x) as a byproduct.
  double Posteriors(const double *frame, int32 dim, double *gamma) const;

  void Write(const std::string &path) const;
  static DiagGmm Read(const std::string &path);

 private:
  int32 num_comps_ = 0;
  int32 dim_ = 0;
  std::vector<double> weights_;
  std::vector<double> means_;    // row-major M x d
  std::vector<double> vars_;     // row-major M x d
  // Derived, rebuilt by ComputeDerived():
  std::vector<double> inv_vars_;
  std::vector<double> gconsts_;  // log w_m - 0.5 sum_i log(2 pi var_mi)
};

}  // namespace mvfe

#endif  // MVFE_GMM_DIAG_GMM_H_
