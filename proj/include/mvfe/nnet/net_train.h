// mvfe/nnet/net_train.h

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

#ifndef MVFE_NNET_NET_TRAIN_H_
#define MVFE_NNET_NET_TRAIN_H_

#include <vector>

#include "mvfe/nnet/fused_net.h"

namespace mvfe {

struct TrainSchedule {
  double initial_lr = 0.008;
  int32 constant_iters = 4;   // epochs at initial_lr before halving starts
  int32 minibatch = 256;
  int32 max_epochs = 50;
  // An epoch "improves" when cv frame error drops by at least this much
  // (absolute) below the best seen so far, including the pre-training
  // baseline.
  double improve_threshold = 0.001;

  void Validate() const {
    if (initial_lr <= 0.0) throw ConfigError("train: initial_lr must be > 0");
    if (minibatch < 1) throw ConfigError("train: minibatch must be >= 1");
    if (constant_iters < 0 || max_epochs < 1)
      throw ConfigError("train: bad epoch counts");
  }
};

struct EpochRecord {
  double lr = 0.0;
  double train_loss = 0.0;
  double cv_frame_error = 0.0;
};

/// SGD with cross-entropy.  Shuffling is seeded and epoch order is
/// deterministic.  The learning rate stays at initial_lr for
/// `constant_iters` epochs; afterwards every epoch whose cv frame error
/// does not improve on the best seen halves the rate, and two such
/// epochs in a row end training.
std::vector<EpochRecord> TrainFusedNet(FusedNet *net, const NetDataset &train,
                                       const NetDataset &cv,
                                       const TrainSchedule &schedule,
                                       uint64 seed, int32 num_threads = 1);

}  // namespace mvfe

#endif  // MVFE_NNET_NET_TRAIN_H_
