// tools/mvfe_main.cc

// Copyright 2026  MVFE Authors

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

// mvfe: one binary, one subcommand per pipeline stage.
//
//   mfb | doc | cepstra | gmm-train | fmllr-est | fmllr-apply | splice |
//   concat | cmvn | tv-ingest | net-train | net-eval | rover | score |
//   config-dump
//
// --jobs, --seed and --config are accepted everywhere.  Exit codes:
// 0 success, 1 usage, 2 bad input or configuration, 3 numeric failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "mvfe/adapt/fmllr.h"
#include "mvfe/base/common.h"
#include "mvfe/dsp/dct.h"
#include "mvfe/feat/doc.h"
#include "mvfe/feat/gammatone.h"
#include "mvfe/feat/mfb.h"
#include "mvfe/feat/oscillator.h"
#include "mvfe/gmm/diag_gmm.h"
#include "mvfe/gmm/train_em.h"
#include "mvfe/nnet/fused_net.h"
#include "mvfe/nnet/net_train.h"
#include "mvfe/rover/combine.h"
#include "mvfe/rover/nbest.h"
#include "mvfe/rover/wer.h"
#include "mvfe/util/atomic_file.h"
#include "mvfe/util/config.h"
#include "mvfe/util/parallel.h"
#include "mvfe/util/wav.h"
#include "mvfe/view/archive.h"
#include "mvfe/view/stream_ops.h"
#include "mvfe/view/tv.h"

using namespace mvfe;

namespace {

struct Ctx {
  int32 jobs = 1;
  uint64 seed = 0;
  std::string config_path;

  PipelineConfig Load() const {
    PipelineConfig cfg;
    if (!config_path.empty()) cfg.LoadFile(config_path);
    return cfg;
  }
};

bool Given(const CLI::App *sub, const std::string &name) {
  return sub->count(name) > 0;
}

std::string Stem(const std::string &path) {
  return std::filesystem::path(path).stem().string();
}

// scp lines: <utt_id> <wav_path>; blank lines and # comments skipped.
std::vector<std::pair<std::string, std::string>> ReadScp(
    const std::string &path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open scp file: " + path);
  std::vector<std::pair<std::string, std::string>> items;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    line_no++;
    std::istringstream ls(line);
    std::string utt, wav, extra;
    if (!(ls >> utt)) continue;
    if (utt[0] == '#') continue;
    if (!(ls >> wav) || (ls >> extra))
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": expected '<utt_id> <wav_path>'");
    items.emplace_back(utt, wav);
  }
  return items;
}

// utt_id -> group, same line format as scp.
std::map<std::string, std::string> ReadGroupMap(const std::string &path) {
  std::map<std::string, std::string> m;
  for (const auto &[utt, group] : ReadScp(path)) {
    if (!m.emplace(utt, group).second)
      throw InputError("duplicate utt_id '" + utt + "' in " + path);
  }
  return m;
}

struct ExtractOpts {
  std::string in, scp, out;
};

std::vector<std::pair<std::string, std::string>> GatherWavs(
    const ExtractOpts &o) {
  if (!o.in.empty()) return {{Stem(o.in), o.in}};
  return ReadScp(o.scp);
}

void RunMfb(const Ctx &ctx, const ExtractOpts &o) {
  PipelineConfig cfg = ctx.Load();
  auto items = GatherWavs(o);
  std::vector<FeatureMatrix> results(items.size());
  ParallelFor(static_cast<int32>(items.size()), ctx.jobs, [&](int32 i) {
    Waveform wave = ReadWav(items[i].second);
    results[i] = ExtractMfb(wave, cfg.framing, cfg.mel);
    results[i].utt_id = items[i].first;
  });
  FeatureArchive ar;
  for (auto &f : results) ar.Add(std::move(f));
  ar.Write(o.out);
  MVFE_LOG("wrote " << ar.NumUtts() << " utterance(s) to " << o.out);
}

void RunDoc(const Ctx &ctx, const ExtractOpts &o) {
  PipelineConfig cfg = ctx.Load();
  DocConfig dc;
  dc.compression = cfg.doc_compression;
  dc.framing = cfg.framing;
  auto items = GatherWavs(o);
  std::vector<FeatureMatrix> results(items.size());
  ParallelFor(static_cast<int32>(items.size()), ctx.jobs, [&](int32 i) {
    Waveform wave = ReadWav(items[i].second);
    GammatoneBank gbank = MakeGammatoneBank(cfg.gammatone, wave.sample_rate);
    OscillatorBank obank = MakeOscillatorBank(gbank, cfg.doc_zeta);
    results[i] = ExtractDoc(wave, gbank, obank, dc);
    results[i].utt_id = items[i].first;
  });
  FeatureArchive ar;
  for (auto &f : results) ar.Add(std::move(f));
  ar.Write(o.out);
  MVFE_LOG("wrote " << ar.NumUtts() << " utterance(s) to " << o.out);
}

struct CepstraOpts {
  std::string in, out;
  bool inverse = false;
};

void RunCepstra(const Ctx &ctx, const CepstraOpts &o) {
  FeatureArchive in = FeatureArchive::Read(o.in);
  FeatureArchive out;
  std::vector<FeatureMatrix> results(in.NumUtts());
  ParallelFor(in.NumUtts(), ctx.jobs, [&](int32 i) {
    results[i] = o.inverse ? IdctRows(in.Utt(i)) : DctRows(in.Utt(i));
  });
  for (auto &f : results) out.Add(std::move(f));
  out.Write(o.out);
}

struct GmmTrainOpts {
  std::string feats, out;
  int32 comps = 0, iters = 0;
};

void RunGmmTrain(const Ctx &ctx, const CLI::App *sub, const GmmTrainOpts &o) {
  PipelineConfig cfg = ctx.Load();
  TrainEmOptions opts = cfg.gmm;
  if (Given(sub, "--comps")) opts.num_comps = o.comps;
  if (Given(sub, "--iters")) opts.iters = o.iters;
  opts.seed = ctx.seed;
  opts.num_threads = ctx.jobs;

  FeatureArchive ar = FeatureArchive::Read(o.feats);
  std::vector<const FeatureMatrix *> data;
  for (int32 i = 0; i < ar.NumUtts(); i++) data.push_back(&ar.Utt(i));

  std::vector<double> ll_history;
  DiagGmm gmm = TrainEm(data, opts, &ll_history);
  for (size_t i = 0; i < ll_history.size(); i++)
    MVFE_LOG("iter " << i << ": total log-likelihood " << ll_history[i]);
  gmm.Write(o.out);
}

struct FmllrEstOpts {
  std::string feats, gmm, out, group_by;
  std::string domain = "fbank";
  int32 sweeps = 0;
  double min_frames = 0.0;
};

void RunFmllrEst(const Ctx &ctx, const CLI::App *sub, const FmllrEstOpts &o) {
  PipelineConfig cfg = ctx.Load();
  FmllrOptions opts = cfg.fmllr;
  if (Given(sub, "--sweeps")) opts.sweeps = o.sweeps;
  if (Given(sub, "--min-frames")) opts.min_frames = o.min_frames;
  if (o.domain != "fbank" && o.domain != "cepstral")
    throw ConfigError("fmllr-est: --domain must be fbank or cepstral");

  FeatureArchive ar = FeatureArchive::Read(o.feats);
  DiagGmm gmm = DiagGmm::Read(o.gmm);
  int32 d = gmm.Dim();

  std::map<std::string, std::string> group_of;
  if (!o.group_by.empty()) group_of = ReadGroupMap(o.group_by);

  // Per-utterance stats merged in archive order, so --jobs does not
  // change the result.
  std::vector<FmllrStats> per_utt(ar.NumUtts(), FmllrStats(d));
  ParallelFor(ar.NumUtts(), ctx.jobs, [&](int32 i) {
    FeatureMatrix f =
        o.domain == "cepstral" ? DctRows(ar.Utt(i)) : ar.Utt(i);
    AccumulateFmllrStats(gmm, f, &per_utt[i]);
  });

  std::vector<std::string> group_order;
  std::map<std::string, FmllrStats> stats;
  for (int32 i = 0; i < ar.NumUtts(); i++) {
    std::string g;
    if (!o.group_by.empty()) {
      auto it = group_of.find(ar.Utt(i).utt_id);
      if (it == group_of.end())
        throw InputError("no group for utt '" + ar.Utt(i).utt_id + "' in " +
                         o.group_by);
      g = it->second;
    }
    auto [it, fresh] = stats.emplace(g, FmllrStats(d));
    if (fresh) group_order.push_back(g);
    it->second.Add(per_utt[i]);
  }

  for (const std::string &g : group_order) {
    const FmllrStats &s = stats.at(g);
    FmllrTransform tf;
    if (s.beta < opts.min_frames) {
      MVFE_WARN("insufficient adaptation data"
                << (g.empty() ? "" : " for group '" + g + "'") << " ("
                << s.beta << " frames, need " << opts.min_frames
                << "); writing identity");
      tf = FmllrTransform::Identity(d);
    } else {
      tf = EstimateFmllr(s, opts);
    }
    std::string path = g.empty() ? o.out : o.out + "." + g;
    tf.Write(path);
    MVFE_LOG("wrote transform " << path << " (beta " << s.beta << ")");
  }
}

struct FmllrApplyOpts {
  std::string feats, transform, out, group_by;
  std::string domain = "fbank";
};

void RunFmllrApply(const Ctx &ctx, const FmllrApplyOpts &o) {
  if (o.domain != "fbank" && o.domain != "cepstral")
    throw ConfigError("fmllr-apply: --domain must be fbank or cepstral");
  FeatureArchive ar = FeatureArchive::Read(o.feats);

  std::map<std::string, std::string> group_of;
  if (!o.group_by.empty()) group_of = ReadGroupMap(o.group_by);
  std::map<std::string, FmllrTransform> cache;
  std::vector<const FmllrTransform *> tf_of(ar.NumUtts());
  for (int32 i = 0; i < ar.NumUtts(); i++) {
    std::string path = o.transform;
    if (!o.group_by.empty()) {
      auto it = group_of.find(ar.Utt(i).utt_id);
      if (it == group_of.end())
        throw InputError("no group for utt '" + ar.Utt(i).utt_id + "' in " +
                         o.group_by);
      path += "." + it->second;
    }
    auto [it, fresh] = cache.emplace(path, FmllrTransform());
    if (fresh) it->second = FmllrTransform::Read(path);
    tf_of[i] = &it->second;
  }

  std::vector<FeatureMatrix> results(ar.NumUtts());
  ParallelFor(ar.NumUtts(), ctx.jobs, [&](int32 i) {
    if (o.domain == "cepstral") {
      results[i] = IdctRows(ApplyFmllr(*tf_of[i], DctRows(ar.Utt(i))));
    } else {
      results[i] = ApplyFmllr(*tf_of[i], ar.Utt(i));
    }
  });
  FeatureArchive out;
  for (auto &f : results) out.Add(std::move(f));
  out.Write(o.out);
}

struct SpliceOpts {
  std::string in, out;
  int32 left = 7, right = 7;
};

void RunSplice(const Ctx &ctx, const CLI::App *sub, const SpliceOpts &o) {
  PipelineConfig cfg = ctx.Load();
  int32 left = Given(sub, "--left") ? o.left : cfg.splice_left;
  int32 right = Given(sub, "--right") ? o.right : cfg.splice_right;
  FeatureArchive in = FeatureArchive::Read(o.in);
  std::vector<FeatureMatrix> results(in.NumUtts());
  ParallelFor(in.NumUtts(), ctx.jobs, [&](int32 i) {
    results[i] = Splice(in.Utt(i), left, right);
  });
  FeatureArchive out;
  for (auto &f : results) out.Add(std::move(f));
  out.Write(o.out);
}

struct ConcatOpts {
  std::vector<std::string> ins;
  std::string out;
};

void RunConcat(const Ctx &ctx, const ConcatOpts &o) {
  std::vector<FeatureArchive> ars;
  for (const std::string &p : o.ins) ars.push_back(FeatureArchive::Read(p));
  const FeatureArchive &first = ars[0];
  std::vector<FeatureMatrix> results(first.NumUtts());
  ParallelFor(first.NumUtts(), ctx.jobs, [&](int32 i) {
    const std::string &utt = first.Utt(i).utt_id;
    std::vector<const FeatureMatrix *> streams;
    for (size_t a = 0; a < ars.size(); a++) {
      if (!ars[a].Has(utt))
        throw InputError("concat: utt '" + utt + "' missing from " +
                         o.ins[a]);
      streams.push_back(&ars[a].Get(utt));
    }
    results[i] = ConcatStreams(streams);
  });
  FeatureArchive out;
  for (auto &f : results) out.Add(std::move(f));
  out.Write(o.out);
}

struct InOutOpts {
  std::string in, out;
};

void RunCmvn(const Ctx &ctx, const InOutOpts &o) {
  FeatureArchive in = FeatureArchive::Read(o.in);
  std::vector<FeatureMatrix> results(in.NumUtts());
  ParallelFor(in.NumUtts(), ctx.jobs,
              [&](int32 i) { results[i] = Cmvn(in.Utt(i)); });
  FeatureArchive out;
  for (auto &f : results) out.Add(std::move(f));
  out.Write(o.out);
}

struct TvIngestOpts {
  std::string in, like, out;
};

void RunTvIngest(const Ctx &ctx, const TvIngestOpts &o) {
  FeatureArchive tv = FeatureArchive::Read(o.in);
  FeatureArchive like = FeatureArchive::Read(o.like);
  std::vector<FeatureMatrix> results(tv.NumUtts());
  ParallelFor(tv.NumUtts(), ctx.jobs, [&](int32 i) {
    const std::string &utt = tv.Utt(i).utt_id;
    if (!like.Has(utt))
      throw InputError("tv-ingest: utt '" + utt + "' missing from " + o.like);
    const FeatureMatrix &ref = like.Get(utt);
    results[i] = IngestTv(tv.Utt(i), ref.frame_shift_ms, ref.rows);
    results[i].utt_id = utt;
  });
  FeatureArchive out;
  for (auto &f : results) out.Add(std::move(f));
  out.Write(o.out);
}

// Labels ride in d = 1 archives; frame t of utt u holds the class index.
NetDataset BuildDataset(const FeatureArchive &feats,
                        const FeatureArchive &labels,
                        const std::string &labels_path) {
  if (feats.NumUtts() == 0)
    throw InputError("net data: empty feature archive");
  if (labels.NumUtts() > 0 && labels.Dim() != 1)
    throw InputError("labels must be 1-dimensional: " + labels_path);
  int64 total = 0;
  for (int32 i = 0; i < feats.NumUtts(); i++) total += feats.Utt(i).rows;

  NetDataset data;
  data.inputs = FeatureMatrix(static_cast<int32>(total), feats.Dim());
  data.targets.reserve(total);
  int32 at = 0;
  for (int32 i = 0; i < feats.NumUtts(); i++) {
    const FeatureMatrix &f = feats.Utt(i);
    if (!labels.Has(f.utt_id))
      throw InputError("no labels for utt '" + f.utt_id + "' in " +
                       labels_path);
    const FeatureMatrix &lab = labels.Get(f.utt_id);
    if (lab.rows != f.rows)
      throw InputError("utt '" + f.utt_id + "': " + std::to_string(f.rows) +
                       " feature frames vs " + std::to_string(lab.rows) +
                       " label frames");
    for (int32 t = 0; t < f.rows; t++) {
      std::copy(f.Row(t), f.Row(t) + f.cols, data.inputs.Row(at + t));
      data.targets.push_back(static_cast<int32>(std::lround(lab.At(t, 0))));
    }
    at += f.rows;
  }
  return data;
}

struct NetTrainOpts {
  std::string train_feats, train_labels, cv_feats, cv_labels, out;
  int32 epochs = 0, minibatch = 0;
  double lr = 0.0;
};

void RunNetTrain(const Ctx &ctx, const CLI::App *sub, const NetTrainOpts &o) {
  PipelineConfig cfg = ctx.Load();
  if (Given(sub, "--epochs")) cfg.schedule.max_epochs = o.epochs;
  if (Given(sub, "--minibatch")) cfg.schedule.minibatch = o.minibatch;
  if (Given(sub, "--lr")) cfg.schedule.initial_lr = o.lr;

  NetDataset train = BuildDataset(FeatureArchive::Read(o.train_feats),
                                  FeatureArchive::Read(o.train_labels),
                                  o.train_labels);
  NetDataset cv = BuildDataset(FeatureArchive::Read(o.cv_feats),
                               FeatureArchive::Read(o.cv_labels),
                               o.cv_labels);
  train.Validate(cfg.net);
  cv.Validate(cfg.net);

  FusedNet net(cfg.net);
  net.InitRandom(ctx.seed);
  std::vector<EpochRecord> history =
      TrainFusedNet(&net, train, cv, cfg.schedule, ctx.seed, ctx.jobs);
  for (size_t e = 0; e < history.size(); e++)
    MVFE_LOG("epoch " << (e + 1) << ": lr " << history[e].lr
                      << " train_loss " << history[e].train_loss
                      << " cv_frame_error " << history[e].cv_frame_error);
  net.Write(o.out);
}

struct NetEvalOpts {
  std::string feats, labels, net, post;
};

void RunNetEval(const Ctx &ctx, const NetEvalOpts &o) {
  FusedNet net = FusedNet::Read(o.net);
  FeatureArchive feats = FeatureArchive::Read(o.feats);
  FeatureArchive labels = FeatureArchive::Read(o.labels);
  NetDataset data = BuildDataset(feats, labels, o.labels);
  data.Validate(net.Config());

  double err = net.FrameError(data, ctx.jobs);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "frame_error\t%.6f\n", err);
  std::cout << buf;

  if (!o.post.empty()) {
    const FusedNetConfig &nc = net.Config();
    int32 acoustic_dim = nc.AcousticInputDim();
    std::vector<FeatureMatrix> results(feats.NumUtts());
    ParallelFor(feats.NumUtts(), ctx.jobs, [&](int32 i) {
      const FeatureMatrix &f = feats.Utt(i);
      FeatureMatrix post(f.rows, nc.num_outputs, f.frame_shift_ms, f.utt_id);
      for (int32 t = 0; t < f.rows; t++) {
        const double *art =
            nc.art_branch ? f.Row(t) + acoustic_dim : nullptr;
        net.Forward(f.Row(t), art, post.Row(t));
      }
      results[i] = std::move(post);
    });
    FeatureArchive out;
    for (auto &p : results) out.Add(std::move(p));
    out.Write(o.post);
  }
}

struct RoverOpts {
  std::vector<std::string> nbest;
  std::string out;
  double scale = 0.0;
  int32 depth_cap = 0;
};

void RunRover(const Ctx &ctx, const CLI::App *sub, const RoverOpts &o) {
  PipelineConfig cfg = ctx.Load();
  RoverOptions opts = cfg.rover;
  if (Given(sub, "--scale")) opts.scale = o.scale;
  if (Given(sub, "--depth-cap")) opts.depth_cap = o.depth_cap;

  // systems[s]: utt -> list; the first system fixes the output order.
  std::vector<std::map<std::string, NBestList>> systems;
  std::vector<std::string> order;
  for (size_t s = 0; s < o.nbest.size(); s++) {
    std::map<std::string, NBestList> m;
    for (NBestList &list : ReadNBestFile(o.nbest[s])) {
      if (s == 0) order.push_back(list.utt_id);
      m[list.utt_id] = std::move(list);
    }
    systems.push_back(std::move(m));
  }
  for (size_t s = 1; s < systems.size(); s++) {
    if (systems[s].size() != order.size())
      throw InputError("rover: " + o.nbest[s] + " has " +
                       std::to_string(systems[s].size()) +
                       " utterances, expected " +
                       std::to_string(order.size()));
  }

  std::vector<std::vector<std::string>> winners(order.size());
  ParallelFor(static_cast<int32>(order.size()), ctx.jobs, [&](int32 i) {
    std::vector<NBestList> lists;
    for (size_t s = 0; s < systems.size(); s++) {
      auto it = systems[s].find(order[i]);
      if (it == systems[s].end())
        throw InputError("rover: utt '" + order[i] + "' missing from " +
                         o.nbest[s]);
      lists.push_back(it->second);
    }
    winners[i] = RoverCombine(lists, opts);
  });

  AtomicOutputFile out(o.out);
  for (size_t i = 0; i < order.size(); i++) {
    out.Stream() << order[i];
    for (const std::string &w : winners[i]) out.Stream() << ' ' << w;
    out.Stream() << '\n';
  }
  out.Commit();
}

struct ScoreOpts {
  std::string hyp, ref, out;
};

void RunScore(const Ctx &, const ScoreOpts &o) {
  std::vector<RefTranscript> refs = ReadRefFile(o.ref);
  std::map<std::string, std::vector<std::string>> hyps;
  for (RefTranscript &h : ReadRefFile(o.hyp)) {
    if (!hyps.emplace(h.utt_id, std::move(h.words)).second)
      throw InputError("duplicate utt_id '" + h.utt_id + "' in " + o.hyp);
  }
  for (const auto &[utt, words] : hyps) {
    (void)words;
    bool known = false;
    for (const RefTranscript &r : refs) known = known || r.utt_id == utt;
    if (!known)
      MVFE_WARN("hypothesis utt '" << utt << "' absent from reference; "
                                   << "ignored");
  }

  std::ostringstream text;
  text << "utt\tsub\tdel\tins\tref_words\twer\n";
  WerReport total;
  char buf[32];
  for (const RefTranscript &r : refs) {
    auto it = hyps.find(r.utt_id);
    if (it == hyps.end())
      throw InputError("no hypothesis for utt '" + r.utt_id + "' in " +
                       o.hyp);
    WerReport rep = ScoreWer(it->second, r.words);
    total.Add(rep);
    std::snprintf(buf, sizeof(buf), "%.6f", rep.Wer());
    text << r.utt_id << '\t' << rep.substitutions << '\t' << rep.deletions
         << '\t' << rep.insertions << '\t' << rep.ref_words << '\t' << buf
         << '\n';
  }
  std::snprintf(buf, sizeof(buf), "%.6f", total.Wer());
  text << "TOTAL\t" << total.substitutions << '\t' << total.deletions << '\t'
       << total.insertions << '\t' << total.ref_words << '\t' << buf << '\n';

  if (o.out.empty()) {
    std::cout << text.str();
  } else {
    AtomicOutputFile out(o.out);
    out.Stream() << text.str();
    out.Commit();
  }
}

void RunConfigDump(const Ctx &ctx, const std::string &out) {
  PipelineConfig cfg = ctx.Load();
  if (out.empty()) {
    std::cout << cfg.Dump();
  } else {
    AtomicOutputFile file(out);
    file.Stream() << cfg.Dump();
    file.Commit();
  }
}

CLI::App *AddCommand(CLI::App &app, const std::string &name,
                     const std::string &desc) {
  CLI::App *sub = app.add_subcommand(name, desc);
  sub->fallthrough();
  return sub;
}

void AddWavInputs(CLI::App *sub, ExtractOpts &o) {
  auto *g = sub->add_option_group("input", "waveform source");
  g->add_option("--in", o.in, "single input wav file");
  g->add_option("--scp", o.scp, "list file: <utt_id> <wav_path> per line");
  g->require_option(1);
  sub->add_option("--out", o.out, "output feature archive")->required();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"mvfe: multiview speech feature pipeline"};
  app.require_subcommand(1);

  Ctx ctx;
  app.add_option("--jobs", ctx.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", ctx.seed, "seed for all randomized stages");
  app.add_option("--config", ctx.config_path, "key = value config file");

  ExtractOpts mfb_o;
  CLI::App *mfb = AddCommand(app, "mfb", "log mel-filterbank features");
  AddWavInputs(mfb, mfb_o);
  mfb->callback([&] { RunMfb(ctx, mfb_o); });

  ExtractOpts doc_o;
  CLI::App *doc = AddCommand(app, "doc", "damped oscillator coefficients");
  AddWavInputs(doc, doc_o);
  doc->callback([&] { RunDoc(ctx, doc_o); });

  CepstraOpts cep_o;
  CLI::App *cep = AddCommand(app, "cepstra", "orthonormal DCT per frame");
  cep->add_option("--in", cep_o.in, "input feature archive")->required();
  cep->add_option("--out", cep_o.out, "output feature archive")->required();
  cep->add_flag("--inverse", cep_o.inverse, "apply the inverse transform");
  cep->callback([&] { RunCepstra(ctx, cep_o); });

  GmmTrainOpts gmm_o;
  CLI::App *gmm = AddCommand(app, "gmm-train", "diagonal GMM via EM");
  gmm->add_option("--feats", gmm_o.feats, "training feature archive")
      ->required();
  gmm->add_option("--out", gmm_o.out, "output model file")->required();
  gmm->add_option("--comps", gmm_o.comps, "number of Gaussians");
  gmm->add_option("--iters", gmm_o.iters, "EM iterations");
  gmm->callback([&] { RunGmmTrain(ctx, gmm, gmm_o); });

  FmllrEstOpts fest_o;
  CLI::App *fest = AddCommand(app, "fmllr-est", "estimate fMLLR transforms");
  fest->add_option("--feats", fest_o.feats, "adaptation feature archive")
      ->required();
  fest->add_option("--gmm", fest_o.gmm, "model file")->required();
  fest->add_option("--out", fest_o.out, "output transform file")->required();
  fest->add_option("--group-by", fest_o.group_by,
                   "utt -> group map; writes <out>.<group> per group");
  fest->add_option("--domain", fest_o.domain, "fbank or cepstral");
  fest->add_option("--sweeps", fest_o.sweeps, "row-update sweeps");
  fest->add_option("--min-frames", fest_o.min_frames,
                   "below this soft count the transform stays identity");
  fest->callback([&] { RunFmllrEst(ctx, fest, fest_o); });

  FmllrApplyOpts fapp_o;
  CLI::App *fapp = AddCommand(app, "fmllr-apply", "apply fMLLR transforms");
  fapp->add_option("--feats", fapp_o.feats, "input feature archive")
      ->required();
  fapp->add_option("--transform", fapp_o.transform, "transform file")
      ->required();
  fapp->add_option("--out", fapp_o.out, "output feature archive")->required();
  fapp->add_option("--group-by", fapp_o.group_by,
                   "utt -> group map; reads <transform>.<group>");
  fapp->add_option("--domain", fapp_o.domain, "fbank or cepstral");
  fapp->callback([&] { RunFmllrApply(ctx, fapp_o); });

  SpliceOpts spl_o;
  CLI::App *spl = AddCommand(app, "splice", "context splicing");
  spl->add_option("--in", spl_o.in, "input feature archive")->required();
  spl->add_option("--out", spl_o.out, "output feature archive")->required();
  spl->add_option("--left", spl_o.left, "left context frames");
  spl->add_option("--right", spl_o.right, "right context frames");
  spl->callback([&] { RunSplice(ctx, spl, spl_o); });

  ConcatOpts cat_o;
  CLI::App *cat = AddCommand(app, "concat", "concatenate feature streams");
  cat->add_option("--in", cat_o.ins, "input archives, repeat per stream")
      ->required()
      ->expected(-2);
  cat->add_option("--out", cat_o.out, "output feature archive")->required();
  cat->callback([&] { RunConcat(ctx, cat_o); });

  InOutOpts cmvn_o;
  CLI::App *cmv = AddCommand(app, "cmvn", "per-utterance mean/variance norm");
  cmv->add_option("--in", cmvn_o.in, "input feature archive")->required();
  cmv->add_option("--out", cmvn_o.out, "output feature archive")->required();
  cmv->callback([&] { RunCmvn(ctx, cmvn_o); });

  TvIngestOpts tv_o;
  CLI::App *tv = AddCommand(app, "tv-ingest",
                            "resample articulatory trajectories");
  tv->add_option("--in", tv_o.in, "TV feature archive (8-dim)")->required();
  tv->add_option("--like", tv_o.like,
                 "paired acoustic archive fixing frame grid and counts")
      ->required();
  tv->add_option("--out", tv_o.out, "output feature archive")->required();
  tv->callback([&] { RunTvIngest(ctx, tv_o); });

  NetTrainOpts nt_o;
  CLI::App *nt = AddCommand(app, "net-train", "train the fused CNN-DNN");
  nt->add_option("--train-feats", nt_o.train_feats, "training inputs")
      ->required();
  nt->add_option("--train-labels", nt_o.train_labels,
                 "training labels (d = 1 archive of class indices)")
      ->required();
  nt->add_option("--cv-feats", nt_o.cv_feats, "cross-validation inputs")
      ->required();
  nt->add_option("--cv-labels", nt_o.cv_labels, "cross-validation labels")
      ->required();
  nt->add_option("--out", nt_o.out, "output model file")->required();
  nt->add_option("--epochs", nt_o.epochs, "maximum epochs");
  nt->add_option("--minibatch", nt_o.minibatch, "minibatch size");
  nt->add_option("--lr", nt_o.lr, "initial learning rate");
  nt->callback([&] { RunNetTrain(ctx, nt, nt_o); });

  NetEvalOpts ne_o;
  CLI::App *ne = AddCommand(app, "net-eval", "frame error and posteriors");
  ne->add_option("--feats", ne_o.feats, "input feature archive")->required();
  ne->add_option("--labels", ne_o.labels, "label archive")->required();
  ne->add_option("--net", ne_o.net, "model file")->required();
  ne->add_option("--post", ne_o.post, "optional posterior archive to write");
  ne->callback([&] { RunNetEval(ctx, ne_o); });

  RoverOpts rov_o;
  CLI::App *rov = AddCommand(app, "rover", "hypothesis combination");
  rov->add_option("--nbest", rov_o.nbest, "n-best file, repeat per system")
      ->required()
      ->expected(-1);
  rov->add_option("--out", rov_o.out, "combined transcript file")->required();
  rov->add_option("--scale", rov_o.scale, "within-list softmax scale");
  rov->add_option("--depth-cap", rov_o.depth_cap,
                  "hypotheses used per list, 0 = all");
  rov->callback([&] { RunRover(ctx, rov, rov_o); });

  ScoreOpts sc_o;
  CLI::App *sc = AddCommand(app, "score", "word error rate report");
  sc->add_option("--hyp", sc_o.hyp, "hypothesis transcripts")->required();
  sc->add_option("--ref", sc_o.ref, "reference transcripts")->required();
  sc->add_option("--out", sc_o.out, "report file (default: stdout)");
  sc->callback([&] { RunScore(ctx, sc_o); });

  std::string dump_out;
  CLI::App *cd = AddCommand(app, "config-dump", "print effective config");
  cd->add_option("--out", dump_out, "output file (default: stdout)");
  cd->callback([&] { RunConfigDump(ctx, dump_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "ERROR: " << e.what();
    std::vector<std::string> extras = app.remaining(true);
    if (!extras.empty()) {
      std::cerr << " (unexpected:";
      for (const std::string &x : extras) std::cerr << ' ' << x;
      std::cerr << ')';
    }
    std::cerr << std::endl;
    return 1;
  } catch (const InputError &e) {
    std::cerr << "ERROR: " << e.what() << std::endl;
    return 2;
  } catch (const ConfigError &e) {
    std::cerr << "ERROR: " << e.what() << std::endl;
    return 2;
  } catch (const NumericError &e) {
    std::cerr << "ERROR: " << e.what() << std::endl;
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "ERROR: " << e.what() << std::endl;
    return 3;
  }
  return 0;
}
