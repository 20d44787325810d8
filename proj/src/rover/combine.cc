// mvfe/rover/combine.cc

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

#include "mvfe/rover/combine.h"

#include <algorithm>

namespace mvfe {

namespace {

const std::string kNull;  // empty string marks the NULL token

// Representative token of a slot: its highest-weight entry under the
// final tie-break rules (NULL loses ties, then first system, then
// lexicographic order).
const std::string &Representative(const WtnSlot &slot) {
  const std::string *best = &kNull;
  const WtnSlot::Vote *best_vote = nullptr;
  for (const auto &[token, vote] : slot.votes) {
    if (best_vote == nullptr) {
      best = &token;
      best_vote = &vote;
      continue;
    }
    bool take = false;
    if (vote.weight > best_vote->weight) {
      take = true;
    } else if (vote.weight == best_vote->weight) {
      if (*best == kNull && token != kNull) take = true;
      else if (token != kNull && *best != kNull) {
        if (vote.first_system < best_vote->first_system) take = true;
        else if (vote.first_system == best_vote->first_system &&
                 token < *best) take = true;
      }
    }
    if (take) {
      best = &token;
      best_vote = &vote;
    }
  }
  return *best;
}

void AddVote(WtnSlot *slot, const std::string &token, double weight,
             int32 system) {
  auto it = slot->votes.find(token);
  if (it == slot->votes.end())
    slot->votes.emplace(token, WtnSlot::Vote{weight, system});
  else
    it->second.weight += weight;
}

// Folds one hypothesis of weight w from `system` into the network.
// folded_before is the total weight already present in every slot.
void FoldHypothesis(std::vector<WtnSlot> *wtn,
                    const std::vector<std::string> &words, double w,
                    int32 system, double folded_before) {
  std::vector<const std::string *> rep;
  rep.reserve(wtn->size());
  for (const WtnSlot &slot : *wtn) rep.push_back(&Representative(slot));

  size_t ns = rep.size(), nw = words.size();
  // dp[i][j]: cost of aligning slots [0, i) with words [0, j).
  // NULL representatives never match, so a diagonal move onto them
  // costs 1 like any substitution.
  std::vector<std::vector<int32>> dp(ns + 1, std::vector<int32>(nw + 1));
  for (size_t i = 0; i <= ns; i++) dp[i][0] = static_cast<int32>(i);
  for (size_t j = 0; j <= nw; j++) dp[0][j] = static_cast<int32>(j);
  for (size_t i = 1; i <= ns; i++) {
    for (size_t j = 1; j <= nw; j++) {
      bool match = !rep[i - 1]->empty() && *rep[i - 1] == words[j - 1];
      int32 diag = dp[i - 1][j - 1] + (match ? 0 : 1);
      int32 del = dp[i - 1][j] + 1;   // hypothesis skips this slot
      int32 ins = dp[i][j - 1] + 1;   // hypothesis adds a new slot
      dp[i][j] = std::min({diag, del, ins});
    }
  }

  // Backtrace, preferring diagonal, then slot-skip, then new-slot; the
  // order is part of the determinism contract.
  struct Step { size_t slot; int32 kind; size_t word; };  // kind 0=align 1=skip 2=new
  std::vector<Step> steps;
  size_t i = ns, j = nw;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      bool match = !rep[i - 1]->empty() && *rep[i - 1] == words[j - 1];
      if (dp[i][j] == dp[i - 1][j - 1] + (match ? 0 : 1)) {
        steps.push_back({i - 1, 0, j - 1});
        i--; j--;
        continue;
      }
    }
    if (i > 0 && dp[i][j] == dp[i - 1][j] + 1) {
      steps.push_back({i - 1, 1, 0});
      i--;
      continue;
    }
    steps.push_back({i, 2, j - 1});
    j--;
  }
  std::reverse(steps.begin(), steps.end());

  // Apply in forward order, tracking how many new slots are already
  // inserted so stored slot indices stay valid.
  std::vector<WtnSlot> out;
  out.reserve(wtn->size() + nw);
  size_t src = 0;
  for (const Step &step : steps) {
    while (src < step.slot) out.push_back(std::move((*wtn)[src++]));
    if (step.kind == 0) {
      WtnSlot slot = std::move((*wtn)[src++]);
      AddVote(&slot, words[step.word], w, system);
      out.push_back(std::move(slot));
    } else if (step.kind == 1) {
      WtnSlot slot = std::move((*wtn)[src++]);
      AddVote(&slot, kNull, w, system);
      out.push_back(std::move(slot));
    } else {
      WtnSlot slot;
      if (folded_before > 0.0) AddVote(&slot, kNull, folded_before, system);
      AddVote(&slot, words[step.word], w, system);
      out.push_back(std::move(slot));
    }
  }
  while (src < wtn->size()) out.push_back(std::move((*wtn)[src++]));
  wtn->swap(out);
}

}  // namespace

double WtnSlot::TotalWeight() const {
  double total = 0.0;
  for (const auto &[token, vote] : votes) total += vote.weight;
  return total;
}

std::vector<std::string> RoverCombine(const std::vector<NBestList> &systems,
                                      const RoverOptions &opts,
                                      std::vector<WtnSlot> *wtn_out) {
  if (systems.empty()) throw InputError("rover: no systems to combine");
  for (const NBestList &list : systems) {
    list.Validate();
    if (list.utt_id != systems[0].utt_id)
      throw InputError("rover: utt_id mismatch, '" + systems[0].utt_id +
                       "' vs '" + list.utt_id + "'");
  }
  if (opts.depth_cap < 0) throw ConfigError("rover: negative depth cap");

  double m_inv = 1.0 / systems.size();
  std::vector<WtnSlot> wtn;
  double folded = 0.0;
  for (size_t s = 0; s < systems.size(); s++) {
    NBestList list = systems[s];
    if (opts.depth_cap > 0 &&
        static_cast<int32>(list.hyps.size()) > opts.depth_cap)
      list.hyps.resize(opts.depth_cap);
    std::vector<double> weights = NBestWeights(list, opts.scale);
    for (size_t h = 0; h < list.hyps.size(); h++) {
      double w = m_inv * weights[h];
      FoldHypothesis(&wtn, list.hyps[h].words, w, static_cast<int32>(s),
                     folded);
      folded += w;
    }
  }

  std::vector<std::string> result;
  for (const WtnSlot &slot : wtn) {
    const std::string &winner = Representative(slot);
    if (!winner.empty()) result.push_back(winner);
  }
  if (wtn_out) *wtn_out = std::move(wtn);
  return result;
}

}  // namespace mvfe
