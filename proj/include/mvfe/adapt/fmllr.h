// mvfe/adapt/fmllr.h

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

#ifndef MVFE_ADAPT_FMLLR_H_
#define MVFE_ADAPT_FMLLR_H_

#include <string>
#include <vector>

#include "mvfe/base/feature_matrix.h"
#include "mvfe/gmm/diag_gmm.h"

namespace mvfe {

/// Affine feature transform x -> A x + b, estimated by maximizing the
/// GMM likelihood of the transformed features plus the log|det A|
/// Jacobian term.
struct FmllrTransform {
  int32 dim = 0;
  std::vector<double> a;  // d x d row-major
  std::vector<double> b;  // d

  static FmllrTransform Identity(int32 dim);

  // Extended row i: [a_i1 .. a_id, b_i].
  void SetRow(int32 i, const double *w);

  void Validate() const;
  void Write(const std::string &path) const;
  static FmllrTransform Read(const std::string &path);
};

/// Sufficient statistics: beta = soft frame count, and per output row i
/// G_i = sum_t sum_m gamma_m(t) sigma_{m,i}^-2 xi_t xi_t^T,
/// k_i = sum_t sum_m gamma_m(t) sigma_{m,i}^-2 mu_{m,i} xi_t^T,
/// with xi_t = [x_t; 1].
struct FmllrStats {
  int32 dim = 0;
  double beta = 0.0;
  std::vector<double> g;  // d blocks of (d+1) x (d+1), row-major
  std::vector<double> k;  // d rows of (d+1)

  explicit FmllrStats(int32 d = 0);
  double *G(int32 i) {
    return g.data() + static_cast<size_t>(i) * (dim + 1) * (dim + 1);
  }
  const double *G(int32 i) const {
    return g.data() + static_cast<size_t>(i) * (dim + 1) * (dim + 1);
  }
  double *K(int32 i) { return k.data() + static_cast<size_t>(i) * (dim + 1); }
  const double *K(int32 i) const {
    return k.data() + static_cast<size_t>(i) * (dim + 1);
  }
  void Add(const FmllrStats &other);
};

struct FmllrOptions {
  int32 sweeps = 5;
  double min_frames = 200.0;
};

void AccumulateFmllrStats(const DiagGmm &gmm, const FeatureMatrix &feats,
                          FmllrStats *stats);

/// Row-wise maximization of Q(W) = beta log|det A|
/// - 1/2 sum_i (w_i G_i w_i^T - 2 w_i k_i^T), starting from [I 0].
/// Each G_i gets tau I (tau = 1e-6 trace/(d+1)) added before inversion.
/// Throws InputError "insufficient adaptation data" when beta <
/// min_frames.  If q_history is non-null it receives Q after the
/// initialization and after each sweep (non-decreasing).
FmllrTransform EstimateFmllr(const FmllrStats &stats,
                             const FmllrOptions &opts,
                             std::vector<double> *q_history = nullptr);

FeatureMatrix ApplyFmllr(const FmllrTransform &tf, const FeatureMatrix &feats);

/// Cepstral-domain path: DCT the filterbank features, estimate and apply
/// the transform there, then IDCT back.  On insufficient adaptation data
/// returns the input unchanged and sets *fell_back if provided.
FeatureMatrix CepstralFmllrPipeline(const FeatureMatrix &fbank_feats,
                                    const DiagGmm &gmm_cepstral,
                                    const FmllrOptions &opts,
                                    bool *fell_back = nullptr);

}  // namespace mvfe

#endif  // MVFE_ADAPT_FMLLR_H_
