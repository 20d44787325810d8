// mvfe/nnet/net_train.cc

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

#include "mvfe/nnet/net_train.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace mvfe {

std::vector<EpochRecord> TrainFusedNet(FusedNet *net, const NetDataset &train,
                                       const NetDataset &cv,
                                       const TrainSchedule &schedule,
                                       uint64 seed, int32 num_threads) {
  schedule.Validate();
  train.Validate(net->Config());
  cv.Validate(net->Config());
  if (train.NumExamples() == 0) throw InputError("train: no training data");
  if (cv.NumExamples() == 0) throw InputError("train: no cv data");

  std::mt19937_64 rng(seed);
  int32 n = train.NumExamples();
  std::vector<int32> order(n);
  for (int32 i = 0; i < n; i++) order[i] = i;

  std::vector<EpochRecord> history;
  std::vector<double> grad;
  std::vector<int32> batch;

  double lr = schedule.initial_lr;
  double best_cv = net->FrameError(cv, num_threads);  // baseline
  int32 bad_epochs = 0;

  for (int32 epoch = 1; epoch <= schedule.max_epochs; epoch++) {
    // Fisher-Yates with modulo draws: deterministic across platforms.
    for (int32 i = n - 1; i > 0; i--) {
      int32 j = static_cast<int32>(rng() % (static_cast<uint64>(i) + 1));
      std::swap(order[i], order[j]);
    }

    double loss_sum = 0.0;
    int64 loss_count = 0;
    for (int32 begin = 0; begin < n; begin += schedule.minibatch) {
      int32 end = std::min(begin + schedule.minibatch, n);
      batch.assign(order.begin() + begin, order.begin() + end);
      double loss = net->CeLossGrad(train, batch, &grad, num_threads);
      if (!std::isfinite(loss))
        throw NumericError("train: non-finite loss at epoch " +
                           std::to_string(epoch) + ", batch offset " +
                           std::to_string(begin));
      loss_sum += loss * (end - begin);
      loss_count += end - begin;
      std::vector<double> &params = net->Params();
      for (size_t i = 0; i < params.size(); i++)
        params[i] -= lr * grad[i];
    }

    EpochRecord rec;
    rec.lr = lr;
    rec.train_loss = loss_sum / loss_count;
    rec.cv_frame_error = net->FrameError(cv, num_threads);
    history.push_back(rec);

    bool improved = (best_cv - rec.cv_frame_error) >= schedule.improve_threshold;
    best_cv = std::min(best_cv, rec.cv_frame_error);

    if (epoch > schedule.constant_iters) {
      if (!improved) {
        lr *= 0.5;
        bad_epochs++;
        if (bad_epochs >= 2) break;
      } else {
        bad_epochs = 0;
      }
    }
  }
  return history;
}

}  // namespace mvfe
