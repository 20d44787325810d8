// mvfe/util/config.h

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

#ifndef MVFE_UTIL_CONFIG_H_
#define MVFE_UTIL_CONFIG_H_

#include <string>

#include "mvfe/adapt/fmllr.h"
#include "mvfe/dsp/framing.h"
#include "mvfe/feat/gammatone.h"
#include "mvfe/feat/mel_banks.h"
#include "mvfe/gmm/train_em.h"
#include "mvfe/nnet/net_train.h"
#include "mvfe/rover/combine.h"

namespace mvfe {

/// Every tunable across the pipeline, loadable from a flat
/// `key = value` text file (# starts a comment).  Unknown keys are
/// rejected; Dump() emits every key so its output re-parses to an
/// equivalent configuration.
struct PipelineConfig {
  FramingConfig framing;
  MelBankConfig mel;
  GammatoneConfig gammatone;
  double doc_zeta = 0.1;
  double doc_compression = 1.0 / 15.0;
  TrainEmOptions gmm;
  FmllrOptions fmllr;
  int32 splice_left = 7;
  int32 splice_right = 7;
  FusedNetConfig net;
  TrainSchedule schedule;
  RoverOptions rover;

  void Set(const std::string &key, const std::string &value);
  void LoadFile(const std::string &path);
  std::string Dump() const;
};

}  // namespace mvfe

#endif  // MVFE_UTIL_CONFIG_H_
