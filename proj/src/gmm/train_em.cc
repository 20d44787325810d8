// mvfe/gmm/train_em.cc

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

#include "mvfe/gmm/train_em.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "mvfe/simd/kernels.h"
#include "mvfe/util/parallel.h"

namespace mvfe {

namespace {

constexpr int32 kShardFrames = 4096;
constexpr int32 kKmeansPasses = 10;
constexpr int32 kKmeansSubsample = 20000;
constexpr double kMinOcc = 1e-8;

// Modulo draw; bias is irrelevant for initialization purposes and the
// result does not depend on the standard library's distribution code.
inline uint64 RandIndex(std::mt19937_64 &rng, uint64 n) { return rng() % n; }

struct EmAccum {
  double ll = 0.0;
  std::vector<double> occ;            // M
  std::vector<double> sum;            // M x d
  std::vector<double> sumsq;          // M x d

  void Resize(int32 m, int32 d) {
    occ.assign(m, 0.0);
    sum.assign(static_cast<size_t>(m) * d, 0.0);
    sumsq.assign(static_cast<size_t>(m) * d, 0.0);
    ll = 0.0;
  }
  void Merge(const EmAccum &other) {
    ll += other.ll;
    for (size_t i = 0; i < occ.size(); i++) occ[i] += other.occ[i];
    for (size_t i = 0; i < sum.size(); i++) sum[i] += other.sum[i];
    for (size_t i = 0; i < sumsq.size(); i++) sumsq[i] += other.sumsq[i];
  }
};

}  // namespace

DiagGmm TrainEm(const std::vector<const FeatureMatrix *> &data,
                const TrainEmOptions &opts,
                std::vector<double> *ll_history) {
  if (opts.num_comps < 1) throw ConfigError("gmm: num_comps must be >= 1");
  if (opts.iters < 0) throw ConfigError("gmm: iters must be >= 0");
  if (data.empty() || data[0]->cols < 1)
    throw InputError("gmm: no input features");

  int32 d = data[0]->cols;
  std::vector<const double *> frames;
  for (const FeatureMatrix *fm : data) {
    if (fm->cols != d)
      throw InputError("gmm: feature dim mismatch, " + std::to_string(d) +
                       " vs " + std::to_string(fm->cols) + " (utt '" +
                       fm->utt_id + "')");
    for (int32 t = 0; t < fm->rows; t++) frames.push_back(fm->Row(t));
  }
  int64 num_frames = static_cast<int64>(frames.size());
  int32 m_comps = opts.num_comps;
  if (num_frames < 10LL * m_comps)
    throw InputError("gmm: insufficient data, " + std::to_string(num_frames) +
                     " frames for " + std::to_string(m_comps) +
                     " components (need >= " + std::to_string(10 * m_comps) +
                     ")");

  // Global per-dim moments drive the automatic floor and reseeding.
  std::vector<double> gmean(d, 0.0), gvar(d, 0.0);
  for (const double *x : frames)
    for (int32 i = 0; i < d; i++) gmean[i] += x[i];
  for (int32 i = 0; i < d; i++) gmean[i] /= num_frames;
  for (const double *x : frames)
    for (int32 i = 0; i < d; i++) {
      double c = x[i] - gmean[i];
      gvar[i] += c * c;
    }
  for (int32 i = 0; i < d; i++)
    gvar[i] = std::max(gvar[i] / num_frames, 1e-10);

  std::vector<double> floor(d);
  for (int32 i = 0; i < d; i++)
    floor[i] = opts.variance_floor > 0.0 ? opts.variance_floor
                                         : 1e-3 * gvar[i];

  std::mt19937_64 rng(opts.seed);

  // Subsample for k-means.
  std::vector<const double *> sub;
  if (num_frames <= kKmeansSubsample) {
    sub = frames;
  } else {
    sub.reserve(kKmeansSubsample);
    for (int32 i = 0; i < kKmeansSubsample; i++)
      sub.push_back(frames[RandIndex(rng, num_frames)]);
  }
  int64 n_sub = static_cast<int64>(sub.size());

  std::vector<double> centers(static_cast<size_t>(m_comps) * d);
  for (int32 m = 0; m < m_comps; m++) {
    const double *f = sub[RandIndex(rng, n_sub)];
    for (int32 i = 0; i < d; i++) centers[static_cast<size_t>(m) * d + i] = f[i];
  }

  std::vector<int32> assign(n_sub, 0);
  std::vector<double> csum(static_cast<size_t>(m_comps) * d);
  std::vector<int64> ccount(m_comps);
  for (int32 pass = 0; pass < kKmeansPasses; pass++) {
    for (int64 t = 0; t < n_sub; t++) {
      const double *x = sub[t];
      double best = std::numeric_limits<double>::max();
      int32 bm = 0;
      for (int32 m = 0; m < m_comps; m++) {
        double dist = 0.0;
        const double *c = &centers[static_cast<size_t>(m) * d];
        for (int32 i = 0; i < d; i++) {
          double diff = x[i] - c[i];
          dist += diff * diff;
        }
        if (dist < best) { best = dist; bm = m; }
      }
      assign[t] = bm;
    }
    std::fill(csum.begin(), csum.end(), 0.0);
    std::fill(ccount.begin(), ccount.end(), 0);
    for (int64 t = 0; t < n_sub; t++) {
      double *c = &csum[static_cast<size_t>(assign[t]) * d];
      const double *x = sub[t];
      for (int32 i = 0; i < d; i++) c[i] += x[i];
      ccount[assign[t]]++;
    }
    for (int32 m = 0; m < m_comps; m++) {
      if (ccount[m] == 0) {
        const double *f = sub[RandIndex(rng, n_sub)];
        for (int32 i = 0; i < d; i++)
          centers[static_cast<size_t>(m) * d + i] = f[i];
      } else {
        for (int32 i = 0; i < d; i++)
          centers[static_cast<size_t>(m) * d + i] =
              csum[static_cast<size_t>(m) * d + i] / ccount[m];
      }
    }
  }

  // Initial model from the final k-means partition.
  DiagGmm gmm(m_comps, d);
  {
    std::vector<double> vsum(static_cast<size_t>(m_comps) * d, 0.0);
    std::fill(ccount.begin(), ccount.end(), 0);
    for (int64 t = 0; t < n_sub; t++) {
      const double *x = sub[t];
      const double *c = &centers[static_cast<size_t>(assign[t]) * d];
      double *v = &vsum[static_cast<size_t>(assign[t]) * d];
      for (int32 i = 0; i < d; i++) {
        double diff = x[i] - c[i];
        v[i] += diff * diff;
      }
      ccount[assign[t]]++;
    }
    for (int32 m = 0; m < m_comps; m++) {
      gmm.Weight(m) = ccount[m] > 0
                          ? static_cast<double>(ccount[m]) / n_sub
                          : 1.0 / n_sub;
      for (int32 i = 0; i < d; i++) {
        gmm.Mean(m)[i] = centers[static_cast<size_t>(m) * d + i];
        double v = ccount[m] > 1
                       ? vsum[static_cast<size_t>(m) * d + i] / ccount[m]
                       : gvar[i];
        gmm.Var(m)[i] = std::max(v, floor[i]);
      }
    }
    double wsum = 0.0;
    for (int32 m = 0; m < m_comps; m++) wsum += gmm.Weight(m);
    for (int32 m = 0; m < m_comps; m++) gmm.Weight(m) /= wsum;
  }
  gmm.ComputeDerived();

  int32 num_shards =
      static_cast<int32>((num_frames + kShardFrames - 1) / kShardFrames);
  std::vector<EmAccum> shards(num_shards);

  for (int32 iter = 0; iter < opts.iters; iter++) {
    ParallelFor(num_shards, opts.num_threads, [&](int32 s) {
      EmAccum &acc = shards[s];
      acc.Resize(m_comps, d);
      int64 begin = static_cast<int64>(s) * kShardFrames;
      int64 end = std::min(begin + kShardFrames, num_frames);
      std::vector<double> gamma(m_comps);
      for (int64 t = begin; t < end; t++) {
        const double *x = frames[t];
        acc.ll += gmm.Posteriors(x, d, gamma.data());
        for (int32 m = 0; m < m_comps; m++) {
          double g = gamma[m];
          if (g == 0.0) continue;
          acc.occ[m] += g;
          double *sm = &acc.sum[static_cast<size_t>(m) * d];
          double *sq = &acc.sumsq[static_cast<size_t>(m) * d];
          for (int32 i = 0; i < d; i++) {
            sm[i] += g * x[i];
            sq[i] += g * x[i] * x[i];
          }
        }
      }
    });
    EmAccum total;
    total.Resize(m_comps, d);
    for (int32 s = 0; s < num_shards; s++) total.Merge(shards[s]);
    if (ll_history) ll_history->push_back(total.ll);

    for (int32 m = 0; m < m_comps; m++) {
      if (total.occ[m] < kMinOcc) {
        const double *f = frames[RandIndex(rng, num_frames)];
        MVFE_WARN("gmm: component " << m << " lost all responsibility mass "
                  "at iteration " << iter << "; re-seeding from a random "
                  "frame");
        for (int32 i = 0; i < d; i++) {
          gmm.Mean(m)[i] = f[i];
          gmm.Var(m)[i] = std::max(gvar[i], floor[i]);
        }
        gmm.Weight(m) = 1.0 / (10.0 * m_comps);
        continue;
      }
      gmm.Weight(m) = total.occ[m] / num_frames;
      for (int32 i = 0; i < d; i++) {
        double mean = total.sum[static_cast<size_t>(m) * d + i] / total.occ[m];
        double var =
            total.sumsq[static_cast<size_t>(m) * d + i] / total.occ[m] -
            mean * mean;
        gmm.Mean(m)[i] = mean;
        gmm.Var(m)[i] = std::max(var, floor[i]);
      }
    }
    double wsum = 0.0;
    for (int32 m = 0; m < m_comps; m++) wsum += gmm.Weight(m);
    for (int32 m = 0; m < m_comps; m++) gmm.Weight(m) /= wsum;
    gmm.ComputeDerived();
  }

  gmm.Validate();
  return gmm;
}

DiagGmm TrainEm(const FeatureMatrix &data, const TrainEmOptions &opts,
                std::vector<double> *ll_history) {
  std::vector<const FeatureMatrix *> v{&data};
  return TrainEm(v, opts, ll_history);
}

}  // namespace mvfe
