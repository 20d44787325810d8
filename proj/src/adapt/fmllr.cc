// mvfe/adapt/fmllr.cc

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

#include "mvfe/adapt/fmllr.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "mvfe/dsp/dct.h"
#include "mvfe/simd/kernels.h"
#include "mvfe/util/atomic_file.h"
#include "mvfe/util/io.h"
#include "mvfe/util/linalg.h"

namespace mvfe {

FmllrTransform FmllrTransform::Identity(int32 dim) {
  FmllrTransform tf;
  tf.dim = dim;
  tf.a.assign(static_cast<size_t>(dim) * dim, 0.0);
  tf.b.assign(dim, 0.0);
  for (int32 i = 0; i < dim; i++) tf.a[static_cast<size_t>(i) * dim + i] = 1.0;
  return tf;
}

void FmllrTransform::SetRow(int32 i, const double *w) {
  for (int32 j = 0; j < dim; j++) a[static_cast<size_t>(i) * dim + j] = w[j];
  b[i] = w[dim];
}

void FmllrTransform::Validate() const {
  for (double v : a)
    if (!std::isfinite(v)) throw NumericError("fmllr: non-finite A entry");
  for (double v : b)
    if (!std::isfinite(v)) throw NumericError("fmllr: non-finite b entry");
  double det = LuFactor(a.data(), dim).Det();
  if (std::abs(det) <= 1e-12)
    throw NumericError("fmllr: transform is singular, |det A| = " +
                       std::to_string(std::abs(det)));
}

void FmllrTransform::Write(const std::string &path) const {
  AtomicOutputFile file(path);
  std::ostream &os = file.Stream();
  os.write("MVT1", 4);
  WriteU32(os, static_cast<uint32>(dim));
  for (int32 i = 0; i < dim; i++) {
    for (int32 j = 0; j < dim; j++)
      WriteF64(os, a[static_cast<size_t>(i) * dim + j]);
    WriteF64(os, b[i]);
  }
  file.Commit();
}

FmllrTransform FmllrTransform::Read(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path);
  ExpectMagic(is, "MVT1", path);
  uint32 d = ReadU32(is, path + ": dim");
  if (d < 1 || d > (1u << 16))
    throw InputError(path + ": implausible dim " + std::to_string(d));
  FmllrTransform tf = Identity(static_cast<int32>(d));
  for (uint32 i = 0; i < d; i++) {
    for (uint32 j = 0; j < d; j++)
      tf.a[static_cast<size_t>(i) * d + j] = ReadF64(is, path + ": A");
    tf.b[i] = ReadF64(is, path + ": b");
  }
  tf.Validate();
  return tf;
}

FmllrStats::FmllrStats(int32 d)
    : dim(d),
      beta(0.0),
      g(static_cast<size_t>(d) * (d + 1) * (d + 1), 0.0),
      k(static_cast<size_t>(d) * (d + 1), 0.0) {}

void FmllrStats::Add(const FmllrStats &other) {
  if (other.dim != dim)
    throw InputError("fmllr stats: dim mismatch " + std::to_string(dim) +
                     " vs " + std::to_string(other.dim));
  beta += other.beta;
  for (size_t i = 0; i < g.size(); i++) g[i] += other.g[i];
  for (size_t i = 0; i < k.size(); i++) k[i] += other.k[i];
}

void AccumulateFmllrStats(const DiagGmm &gmm, const FeatureMatrix &feats,
                          FmllrStats *stats) {
  int32 d = gmm.Dim();
  if (feats.cols != d)
    throw InputError("fmllr: feature dim " + std::to_string(feats.cols) +
                     " vs model dim " + std::to_string(d));
  if (stats->dim != d) *stats = FmllrStats(d);
  int32 e = d + 1;
  std::vector<double> gamma(gmm.NumComps());
  std::vector<double> xi(e), outer(static_cast<size_t>(e) * e);
  // Row scales s_i = sum_m gamma_m / var_mi and weighted mean pulls
  // q_i = sum_m gamma_m mu_mi / var_mi; G_i and k_i are rank-1 updates
  // by the shared outer product xi xi^T.
  std::vector<double> s(d), q(d);
  for (int32 t = 0; t < feats.rows; t++) {
    const double *x = feats.Row(t);
    gmm.Posteriors(x, d, gamma.data());
    for (int32 i = 0; i < d; i++) xi[i] = x[i];
    xi[d] = 1.0;
    for (int32 r = 0; r < e; r++)
      for (int32 c = 0; c < e; c++)
        outer[static_cast<size_t>(r) * e + c] = xi[r] * xi[c];
    std::fill(s.begin(), s.end(), 0.0);
    std::fill(q.begin(), q.end(), 0.0);
    for (int32 m = 0; m < gmm.NumComps(); m++) {
      double gm = gamma[m];
      if (gm == 0.0) continue;
      const double *mu = gmm.Mean(m);
      const double *var = gmm.Var(m);
      for (int32 i = 0; i < d; i++) {
        double w = gm / var[i];
        s[i] += w;
        q[i] += w * mu[i];
      }
    }
    for (int32 i = 0; i < d; i++) {
      simd::Axpy(s[i], outer.data(), stats->G(i), e * e);
      simd::Axpy(q[i], xi.data(), stats->K(i), e);
    }
    stats->beta += 1.0;
  }
}

namespace {

// Q(W) over all rows given current stats; det term uses |det A|.
double Objective(const FmllrStats &stats, const FmllrTransform &tf) {
  int32 d = stats.dim, e = d + 1;
  std::vector<double> w(e), gw(e);
  double q = stats.beta * std::log(std::abs(LuFactor(tf.a.data(), d).Det()));
  for (int32 i = 0; i < d; i++) {
    for (int32 j = 0; j < d; j++)
      w[j] = tf.a[static_cast<size_t>(i) * d + j];
    w[d] = tf.b[i];
    const double *gi = stats.G(i);
    for (int32 r = 0; r < e; r++)
      gw[r] = simd::Dot(gi + static_cast<size_t>(r) * e, w.data(), e);
    double wgw = simd::Dot(w.data(), gw.data(), e);
    double wk = simd::Dot(w.data(), stats.K(i), e);
    q -= 0.5 * (wgw - 2.0 * wk);
  }
  return q;
}

}  // namespace

FmllrTransform EstimateFmllr(const FmllrStats &stats, const FmllrOptions &opts,
                             std::vector<double> *q_history) {
  int32 d = stats.dim;
  if (d < 1) throw InputError("fmllr: empty stats");
  if (stats.beta < opts.min_frames)
    throw InputError("insufficient adaptation data: beta = " +
                     std::to_string(stats.beta) + ", need >= " +
                     std::to_string(opts.min_frames));

  int32 e = d + 1;
  FmllrTransform tf = FmllrTransform::Identity(d);
  if (q_history) q_history->push_back(Objective(stats, tf));

  // Per-row Cholesky of the regularized G_i, done once; tau keeps
  // near-singular stats from short groups invertible.
  std::vector<std::vector<double>> chol(d);
  for (int32 i = 0; i < d; i++) {
    std::vector<double> gi(stats.G(i), stats.G(i) + static_cast<size_t>(e) * e);
    double trace = 0.0;
    for (int32 r = 0; r < e; r++) trace += gi[static_cast<size_t>(r) * e + r];
    double tau = 1e-6 * trace / e;
    for (int32 r = 0; r < e; r++) gi[static_cast<size_t>(r) * e + r] += tau;
    try {
      chol[i] = CholeskyFactor(gi.data(), e);
    } catch (const NumericError &) {
      throw NumericError("fmllr: G_" + std::to_string(i) +
                         " singular even after regularization");
    }
  }

  std::vector<double> cof(static_cast<size_t>(d) * d);
  std::vector<double> p(e), u(e), v(e), w(e);
  for (int32 sweep = 0; sweep < opts.sweeps; sweep++) {
    for (int32 i = 0; i < d; i++) {
      // Extended cofactor row of the current A: det(A) A^-T, last
      // entry 0 so the offset never enters the det term.
      LuFactors lu = LuFactor(tf.a.data(), d);
      double det = lu.Det();
      std::vector<double> ainv(static_cast<size_t>(d) * d);
      lu.Inverse(ainv.data());
      for (int32 j = 0; j < d; j++)
        p[j] = det * ainv[static_cast<size_t>(j) * d + i];
      p[d] = 0.0;

      CholeskySolve(chol[i], e, p.data(), u.data());       // u = G^-1 p
      CholeskySolve(chol[i], e, stats.K(i), v.data());     // v = G^-1 k
      double pgp = simd::Dot(p.data(), u.data(), e);
      double pgk = simd::Dot(p.data(), v.data(), e);
      if (pgp <= 0.0)
        throw NumericError("fmllr: cofactor row has no support in G_" +
                           std::to_string(i));
      double disc = pgk * pgk + 4.0 * pgp * stats.beta;
      double root = std::sqrt(disc);
      double alpha1 = (-pgk + root) / (2.0 * pgp);
      double alpha2 = (-pgk - root) / (2.0 * pgp);

      // Row-local objective difference: with w = alpha u + v,
      // Q_i(alpha) = beta log|alpha pgp + pgk| - 0.5 (alpha^2 pgp - kGk)
      // and the kGk term is common to both roots.
      auto row_q = [&](double alpha) {
        double det_i = alpha * pgp + pgk;
        if (det_i == 0.0) return -std::numeric_limits<double>::infinity();
        return stats.beta * std::log(std::abs(det_i)) -
               0.5 * alpha * alpha * pgp;
      };
      double q1 = row_q(alpha1), q2 = row_q(alpha2);
      double alpha;
      if (q1 > q2) alpha = alpha1;
      else if (q2 > q1) alpha = alpha2;
      else alpha = (alpha1 * pgp + pgk) * det > 0.0 ? alpha1 : alpha2;

      for (int32 j = 0; j < e; j++) w[j] = alpha * u[j] + v[j];
      tf.SetRow(i, w.data());
    }
    if (q_history) q_history->push_back(Objective(stats, tf));
  }
  tf.Validate();
  return tf;
}

FeatureMatrix ApplyFmllr(const FmllrTransform &tf, const FeatureMatrix &feats) {
  if (feats.cols != tf.dim)
    throw InputError("fmllr apply: feature dim " + std::to_string(feats.cols) +
                     " vs transform dim " + std::to_string(tf.dim));
  FeatureMatrix out(feats.rows, feats.cols, feats.frame_shift_ms,
                    feats.utt_id);
  for (int32 t = 0; t < feats.rows; t++)
    simd::MatVec(tf.a.data(), tf.dim, tf.dim, feats.Row(t), tf.b.data(),
                 out.Row(t));
  return out;
}

FeatureMatrix CepstralFmllrPipeline(const FeatureMatrix &fbank_feats,
                                    const DiagGmm &gmm_cepstral,
                                    const FmllrOptions &opts,
                                    bool *fell_back) {
  if (fell_back) *fell_back = false;
  FeatureMatrix cep = DctRows(fbank_feats);
  FmllrStats stats(cep.cols);
  AccumulateFmllrStats(gmm_cepstral, cep, &stats);
  FmllrTransform tf;
  try {
    tf = EstimateFmllr(stats, opts);
  } catch (const InputError &err) {
    MVFE_WARN("cepstral fmllr: " << err.what()
              << "; returning features unchanged");
    if (fell_back) *fell_back = true;
    return fbank_feats;
  }
  return IdctRows(ApplyFmllr(tf, cep));
}

}  // namespace mvfe
