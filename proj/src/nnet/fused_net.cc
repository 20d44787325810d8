// mvfe/nnet/fused_net.cc

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

#include "mvfe/nnet/fused_net.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "mvfe/simd/kernels.h"
#include "mvfe/util/atomic_file.h"
#include "mvfe/util/io.h"
#include "mvfe/util/parallel.h"

namespace mvfe {

namespace {

constexpr int32 kBatchBlock = 32;

inline double Sigmoid(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                  : std::exp(x) / (1.0 + std::exp(x));
}

}  // namespace

void FusedNetConfig::Validate() const {
  if (freq_bands < 1 || context < 1 || num_filters < 1 || num_outputs < 2)
    throw ConfigError("net: counts must be positive, outputs >= 2");
  if (kernel < 1 || kernel > freq_bands)
    throw ConfigError("net: kernel must be in [1, freq_bands], got " +
                      std::to_string(kernel) + " for " +
                      std::to_string(freq_bands) + " bands");
  if (pool < 1) throw ConfigError("net: pool must be >= 1");
  if (PooledLen() < 1)
    throw ConfigError("net: pooling of " + std::to_string(pool) +
                      " leaves no units from conv length " +
                      std::to_string(ConvLen()));
  if (hidden_layers < 0 || (hidden_layers > 0 && hidden_units < 1))
    throw ConfigError("net: bad hidden stack shape");
  if (art_branch && (art_dim < 1 || art_units < 1))
    throw ConfigError("net: articulatory branch enabled but empty");
}

void NetDataset::Validate(const FusedNetConfig &config) const {
  if (inputs.rows != static_cast<int32>(targets.size()))
    throw InputError("net data: " + std::to_string(inputs.rows) +
                     " inputs vs " + std::to_string(targets.size()) +
                     " targets");
  if (inputs.cols != config.InputDim())
    throw InputError("net data: input dim " + std::to_string(inputs.cols) +
                     ", config needs " + std::to_string(config.InputDim()));
  for (int32 t : targets)
    if (t < 0 || t >= config.num_outputs)
      throw InputError("net data: target " + std::to_string(t) +
                       " out of range [0, " +
                       std::to_string(config.num_outputs) + ")");
}

FusedNet::FusedNet(const FusedNetConfig &config) : config_(config) {
  config_.Validate();
  int64 at = 0;
  conv_w_ = at; at += static_cast<int64>(config.num_filters) *
                      config.context * config.kernel;
  conv_b_ = at; at += config.num_filters;
  if (config.art_branch) {
    art_w_ = at; at += static_cast<int64>(config.art_units) * config.art_dim;
    art_b_ = at; at += config.art_units;
  }
  int32 width = config.FusedWidth();
  for (int32 l = 0; l < config.hidden_layers; l++) {
    hid_in_.push_back(width);
    hid_w_.push_back(at); at += static_cast<int64>(config.hidden_units) * width;
    hid_b_.push_back(at); at += config.hidden_units;
    width = config.hidden_units;
  }
  out_in_ = width;
  out_w_ = at; at += static_cast<int64>(config.num_outputs) * width;
  out_b_ = at; at += config.num_outputs;
  params_.assign(at, 0.0);
}

void FusedNet::InitRandom(uint64 seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double r) {
    // 53-bit mantissa draw in [0, 1); avoids distribution-object
    // portability concerns.
    double u = (rng() >> 11) * (1.0 / 9007199254740992.0);
    return (2.0 * u - 1.0) * r;
  };
  auto fill = [&](int64 off, int64 n, int32 fan_in, int32 fan_out) {
    double r = std::sqrt(6.0 / (fan_in + fan_out));
    for (int64 i = 0; i < n; i++) params_[off + i] = uniform(r);
  };
  const FusedNetConfig &c = config_;
  fill(conv_w_, static_cast<int64>(c.num_filters) * c.context * c.kernel,
       c.context * c.kernel, c.PooledLen());
  if (c.art_branch)
    fill(art_w_, static_cast<int64>(c.art_units) * c.art_dim, c.art_dim,
         c.art_units);
  for (int32 l = 0; l < c.hidden_layers; l++)
    fill(hid_w_[l], static_cast<int64>(c.hidden_units) * hid_in_[l],
         hid_in_[l], c.hidden_units);
  fill(out_w_, static_cast<int64>(c.num_outputs) * out_in_, out_in_,
       c.num_outputs);
  // Biases stay zero.
}

struct FusedNet::Activations {
  std::vector<double> conv_z;    // num_filters x conv_len, pre-sigmoid
  std::vector<int32> pool_arg;   // num_filters x pooled, argmax position
  std::vector<double> fused;     // acoustic block then art block
  std::vector<std::vector<double>> hidden;
  std::vector<double> post;
};

void FusedNet::ForwardInternal(const double *acoustic, const double *art,
                               Activations *acts) const {
  const FusedNetConfig &c = config_;
  int32 conv_len = c.ConvLen(), pooled = c.PooledLen();
  const double *p = params_.data();

  acts->conv_z.resize(static_cast<size_t>(c.num_filters) * conv_len);
  acts->pool_arg.resize(static_cast<size_t>(c.num_filters) * pooled);
  acts->fused.assign(c.FusedWidth(), 0.0);

  for (int32 f = 0; f < c.num_filters; f++) {
    const double *wf = p + conv_w_ +
                       static_cast<int64>(f) * c.context * c.kernel;
    double *zf = &acts->conv_z[static_cast<size_t>(f) * conv_len];
    for (int32 pos = 0; pos < conv_len; pos++) {
      double z = p[conv_b_ + f];
      for (int32 ch = 0; ch < c.context; ch++)
        z += simd::Dot(wf + static_cast<int64>(ch) * c.kernel,
                       acoustic + static_cast<int64>(ch) * c.freq_bands + pos,
                       c.kernel);
      zf[pos] = z;
    }
    // Sigmoid is monotone, so pooling the pre-activations picks the
    // same unit as pooling the activations.
    for (int32 j = 0; j < pooled; j++) {
      int32 base = j * c.pool, best = base;
      for (int32 o = 1; o < c.pool; o++)
        if (zf[base + o] > zf[best]) best = base + o;
      acts->pool_arg[static_cast<size_t>(f) * pooled + j] = best;
      acts->fused[static_cast<size_t>(f) * pooled + j] = Sigmoid(zf[best]);
    }
  }

  if (c.art_branch) {
    double *dst = acts->fused.data() + c.AcousticUnits();
    for (int32 u = 0; u < c.art_units; u++)
      dst[u] = Sigmoid(
          p[art_b_ + u] +
          simd::Dot(p + art_w_ + static_cast<int64>(u) * c.art_dim, art,
                    c.art_dim));
  }

  acts->hidden.resize(c.hidden_layers);
  const std::vector<double> *in = &acts->fused;
  for (int32 l = 0; l < c.hidden_layers; l++) {
    acts->hidden[l].resize(c.hidden_units);
    for (int32 u = 0; u < c.hidden_units; u++)
      acts->hidden[l][u] = Sigmoid(
          params_[hid_b_[l] + u] +
          simd::Dot(p + hid_w_[l] + static_cast<int64>(u) * hid_in_[l],
                    in->data(), hid_in_[l]));
    in = &acts->hidden[l];
  }

  acts->post.resize(c.num_outputs);
  double mx = -std::numeric_limits<double>::infinity();
  for (int32 o = 0; o < c.num_outputs; o++) {
    acts->post[o] = p[out_b_ + o] +
                    simd::Dot(p + out_w_ + static_cast<int64>(o) * out_in_,
                              in->data(), out_in_);
    mx = std::max(mx, acts->post[o]);
  }
  double sum = 0.0;
  for (int32 o = 0; o < c.num_outputs; o++) {
    acts->post[o] = std::exp(acts->post[o] - mx);
    sum += acts->post[o];
  }
  for (int32 o = 0; o < c.num_outputs; o++) acts->post[o] /= sum;
}

void FusedNet::Forward(const double *acoustic, const double *art,
                       double *post) const {
  if (config_.art_branch && art == nullptr)
    throw InputError("net: articulatory branch enabled but no input given");
  Activations acts;
  ForwardInternal(acoustic, art, &acts);
  std::copy(acts.post.begin(), acts.post.end(), post);
}

void FusedNet::BackwardInternal(const double *acoustic, const double *art,
                                int32 target, const Activations &acts,
                                double *grad) const {
  const FusedNetConfig &c = config_;
  const double *p = params_.data();
  int32 pooled = c.PooledLen();

  std::vector<double> dlogits(acts.post);
  dlogits[target] -= 1.0;

  const std::vector<double> &last =
      c.hidden_layers > 0 ? acts.hidden[c.hidden_layers - 1] : acts.fused;
  std::vector<double> dcur(out_in_, 0.0);
  for (int32 o = 0; o < c.num_outputs; o++) {
    double d = dlogits[o];
    simd::Axpy(d, last.data(), grad + out_w_ + static_cast<int64>(o) * out_in_,
               out_in_);
    grad[out_b_ + o] += d;
    simd::Axpy(d, p + out_w_ + static_cast<int64>(o) * out_in_, dcur.data(),
               out_in_);
  }

  for (int32 l = c.hidden_layers - 1; l >= 0; l--) {
    const std::vector<double> &h = acts.hidden[l];
    const std::vector<double> &in = l > 0 ? acts.hidden[l - 1] : acts.fused;
    std::vector<double> din(hid_in_[l], 0.0);
    for (int32 u = 0; u < c.hidden_units; u++) {
      double d = dcur[u] * h[u] * (1.0 - h[u]);
      if (d == 0.0) continue;
      simd::Axpy(d, in.data(),
                 grad + hid_w_[l] + static_cast<int64>(u) * hid_in_[l],
                 hid_in_[l]);
      grad[hid_b_[l] + u] += d;
      simd::Axpy(d, p + hid_w_[l] + static_cast<int64>(u) * hid_in_[l],
                 din.data(), hid_in_[l]);
    }
    dcur.swap(din);
  }

  // dcur now spans the fused layer: acoustic block then art block.
  if (c.art_branch) {
    const double *a = acts.fused.data() + c.AcousticUnits();
    const double *da = dcur.data() + c.AcousticUnits();
    for (int32 u = 0; u < c.art_units; u++) {
      double d = da[u] * a[u] * (1.0 - a[u]);
      if (d == 0.0) continue;
      simd::Axpy(d, art, grad + art_w_ + static_cast<int64>(u) * c.art_dim,
                 c.art_dim);
      grad[art_b_ + u] += d;
    }
  }

  for (int32 f = 0; f < c.num_filters; f++) {
    double *gwf = grad + conv_w_ + static_cast<int64>(f) * c.context * c.kernel;
    for (int32 j = 0; j < pooled; j++) {
      double s = acts.fused[static_cast<size_t>(f) * pooled + j];
      double d = dcur[static_cast<size_t>(f) * pooled + j] * s * (1.0 - s);
      if (d == 0.0) continue;
      int32 pos = acts.pool_arg[static_cast<size_t>(f) * pooled + j];
      for (int32 ch = 0; ch < c.context; ch++)
        simd::Axpy(d, acoustic + static_cast<int64>(ch) * c.freq_bands + pos,
                   gwf + static_cast<int64>(ch) * c.kernel, c.kernel);
      grad[conv_b_ + f] += d;
    }
  }
}

double FusedNet::CeLossGrad(const NetDataset &data,
                            const std::vector<int32> &indices,
                            std::vector<double> *grad,
                            int32 num_threads) const {
  if (indices.empty()) throw InputError("net: empty batch");
  data.Validate(config_);
  int32 n = static_cast<int32>(indices.size());
  int32 blocks = (n + kBatchBlock - 1) / kBatchBlock;
  int32 acoustic_dim = config_.AcousticInputDim();

  std::vector<std::vector<double>> block_grad(blocks);
  std::vector<double> block_loss(blocks, 0.0);
  ParallelFor(blocks, num_threads, [&](int32 blk) {
    block_grad[blk].assign(params_.size(), 0.0);
    Activations acts;
    int32 begin = blk * kBatchBlock, end = std::min(begin + kBatchBlock, n);
    for (int32 i = begin; i < end; i++) {
      const double *row = data.inputs.Row(indices[i]);
      const double *art =
          config_.art_branch ? row + acoustic_dim : nullptr;
      ForwardInternal(row, art, &acts);
      double post = std::max(acts.post[data.targets[indices[i]]], 1e-300);
      block_loss[blk] -= std::log(post);
      BackwardInternal(row, art, data.targets[indices[i]], acts,
                       block_grad[blk].data());
    }
  });

  grad->assign(params_.size(), 0.0);
  double loss = 0.0;
  for (int32 blk = 0; blk < blocks; blk++) {
    loss += block_loss[blk];
    for (size_t i = 0; i < grad->size(); i++)
      (*grad)[i] += block_grad[blk][i];
  }
  double inv = 1.0 / n;
  loss *= inv;
  for (double &g : *grad) g *= inv;
  if (!std::isfinite(loss))
    throw NumericError("net: non-finite loss over a batch of " +
                       std::to_string(n));
  return loss;
}

double FusedNet::GradCheck(const NetDataset &data,
                           const std::vector<int32> &indices,
                           double epsilon) {
  if (epsilon <= 0.0) throw ConfigError("grad check: epsilon must be > 0");
  std::vector<double> analytic;
  CeLossGrad(data, indices, &analytic);

  auto loss_only = [&]() {
    std::vector<double> unused;
    return CeLossGrad(data, indices, &unused);
  };
  double worst = 0.0;
  for (size_t i = 0; i < params_.size(); i++) {
    double saved = params_[i];
    params_[i] = saved + epsilon;
    double up = loss_only();
    params_[i] = saved - epsilon;
    double down = loss_only();
    params_[i] = saved;
    double numeric = (up - down) / (2.0 * epsilon);
    double rel = std::abs(analytic[i] - numeric) /
                 std::max(1e-12, std::abs(analytic[i]) + std::abs(numeric));
    worst = std::max(worst, rel);
  }
  return worst;
}

double FusedNet::FrameError(const NetDataset &data, int32 num_threads) const {
  data.Validate(config_);
  if (data.NumExamples() == 0) throw InputError("net: empty evaluation set");
  int32 n = data.NumExamples();
  int32 blocks = (n + kBatchBlock - 1) / kBatchBlock;
  std::vector<int32> block_err(blocks, 0);
  int32 acoustic_dim = config_.AcousticInputDim();
  ParallelFor(blocks, num_threads, [&](int32 blk) {
    Activations acts;
    int32 begin = blk * kBatchBlock, end = std::min(begin + kBatchBlock, n);
    for (int32 i = begin; i < end; i++) {
      const double *row = data.inputs.Row(i);
      ForwardInternal(row, config_.art_branch ? row + acoustic_dim : nullptr,
                      &acts);
      int32 best = 0;
      for (int32 o = 1; o < config_.num_outputs; o++)
        if (acts.post[o] > acts.post[best]) best = o;
      if (best != data.targets[i]) block_err[blk]++;
    }
  });
  int64 errs = 0;
  for (int32 e : block_err) errs += e;
  return static_cast<double>(errs) / n;
}

void FusedNet::Write(const std::string &path) const {
  AtomicOutputFile file(path);
  std::ostream &os = file.Stream();
  os.write("MVN1", 4);
  const FusedNetConfig &c = config_;
  for (int32 v : {c.freq_bands, c.context, c.num_filters, c.kernel, c.pool,
                  c.art_dim, c.art_units, c.hidden_layers, c.hidden_units,
                  c.num_outputs})
    WriteU32(os, static_cast<uint32>(v));
  WriteU8(os, c.art_branch ? 1 : 0);
  for (double v : params_) WriteF64(os, v);
  file.Commit();
}

FusedNet FusedNet::Read(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path);
  ExpectMagic(is, "MVN1", path);
  FusedNetConfig c;
  int32 *fields[] = {&c.freq_bands, &c.context, &c.num_filters, &c.kernel,
                     &c.pool, &c.art_dim, &c.art_units, &c.hidden_layers,
                     &c.hidden_units, &c.num_outputs};
  for (int32 *f : fields) {
    uint32 v = ReadU32(is, path + ": config");
    if (v > (1u << 24)) throw InputError(path + ": implausible config value");
    *f = static_cast<int32>(v);
  }
  c.art_branch = ReadU8(is, path + ": art flag") != 0;
  FusedNet net(c);
  for (size_t i = 0; i < net.params_.size(); i++)
    net.params_[i] = ReadF64(is, path + ": params");
  for (double v : net.params_)
    if (!std::isfinite(v)) throw InputError(path + ": non-finite parameter");
  return net;
}

}  // namespace mvfe
