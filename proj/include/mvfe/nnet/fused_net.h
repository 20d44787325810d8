// mvfe/nnet/fused_net.h

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

#ifndef MVFE_NNET_FUSED_NET_H_
#define MVFE_NNET_FUSED_NET_H_

#include <string>
#include <vector>

#include "mvfe/base/feature_matrix.h"

namespace mvfe {

/// Two parallel input branches into a shared sigmoid stack: acoustic
/// features enter through a 1-D convolution along the frequency axis
/// (the context frames act as input channels) with sigmoid and
/// non-overlapping max pooling; articulatory features enter through an
/// affine sigmoid layer; the concatenation feeds `hidden_layers` sigmoid
/// layers and an affine softmax output.
struct FusedNetConfig {
  int32 freq_bands = 40;    // 80 for combined acoustic streams
  int32 context = 15;
  int32 num_filters = 200;
  int32 kernel = 8;         // 12 for combined streams
  int32 pool = 3;           // non-overlapping max pooling
  int32 art_dim = 120;      // 8 per frame, spliced over the context
  int32 art_units = 100;
  int32 hidden_layers = 5;
  int32 hidden_units = 128; // desk-scale width; full scale uses 2048
  int32 num_outputs = 10;
  bool art_branch = true;

  int32 ConvLen() const { return freq_bands - kernel + 1; }
  int32 PooledLen() const { return ConvLen() / pool; }
  int32 AcousticUnits() const { return num_filters * PooledLen(); }
  int32 FusedWidth() const {
    return AcousticUnits() + (art_branch ? art_units : 0);
  }
  int32 AcousticInputDim() const { return context * freq_bands; }
  int32 InputDim() const {
    return AcousticInputDim() + (art_branch ? art_dim : 0);
  }
  void Validate() const;
};

/// Frame-classification examples: each input row is the acoustic block
/// (context * freq_bands values, context-major) followed by the
/// articulatory block when the branch is enabled.
struct NetDataset {
  FeatureMatrix inputs;
  std::vector<int32> targets;

  int32 NumExamples() const { return inputs.rows; }
  void Validate(const FusedNetConfig &config) const;
};

class FusedNet {
 public:
  explicit FusedNet(const FusedNetConfig &config);

  const FusedNetConfig &Config() const { return config_; }
  int64 NumParams() const { return static_cast<int64>(params_.size()); }
  std::vector<double> &Params() { return params_; }
  const std::vector<double> &Params() const { return params_; }

  // Uniform(-r, r) weights with r = sqrt(6 / (fan_in + fan_out)),
  // zero biases; deterministic under seed.
  void InitRandom(uint64 seed);

  // `art` may be null when the articulatory branch is disabled.
  // `post` receives num_outputs softmax values.
  void Forward(const double *acoustic, const double *art,
               double *post) const;

  // Mean cross-entropy over the indexed examples plus its gradient.
  // Examples are processed in fixed 32-element blocks merged in block
  // order, so the result does not depend on num_threads.
  double CeLossGrad(const NetDataset &data,
                    const std::vector<int32> &indices,
                    std::vector<double> *grad, int32 num_threads = 1) const;

  // Central-difference verification of CeLossGrad; returns
  // max_i |analytic_i - numeric_i| / max(1e-12, |analytic_i| + |numeric_i|).
  double GradCheck(const NetDataset &data, const std::vector<int32> &indices,
                   double epsilon);

  // Fraction of examples whose argmax posterior is not the target.
  double FrameError(const NetDataset &data, int32 num_threads = 1) const;

  void Write(const std::string &path) const;
  static FusedNet Read(const std::string &path);

 private:
  struct Activations;
  void ForwardInternal(const double *acoustic, const double *art,
                       Activations *acts) const;
  void BackwardInternal(const double *acoustic, const double *art,
                        int32 target, const Activations &acts,
                        double *grad) const;

  FusedNetConfig config_;
  std::vector<double> params_;
  // Offsets into params_, in file declaration order.
  int64 conv_w_ = 0, conv_b_ = 0;
  int64 art_w_ = 0, art_b_ = 0;
  std::vector<int64> hid_w_, hid_b_;
  std::vector<int32> hid_in_;   // input width per hidden layer
  int64 out_w_ = 0, out_b_ = 0;
  int32 out_in_ = 0;            // input width of the output layer
};

}  // namespace mvfe

#endif  // MVFE_NNET_FUSED_NET_H_
