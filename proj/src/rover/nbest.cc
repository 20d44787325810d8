// mvfe/rover/nbest.cc

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

#include "mvfe/rover/nbest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace mvfe {

void NBestList::Validate() const {
  if (hyps.empty())
    throw InputError("n-best list for '" + utt_id + "' is empty");
  for (size_t i = 0; i < hyps.size(); i++) {
    if (hyps[i].rank < 1)
      throw InputError("n-best list for '" + utt_id + "': rank " +
                       std::to_string(hyps[i].rank) + " < 1");
    if (i > 0) {
      if (hyps[i].rank <= hyps[i - 1].rank)
        throw InputError("n-best list for '" + utt_id +
                         "': duplicate or unordered rank " +
                         std::to_string(hyps[i].rank));
      if (hyps[i].score > hyps[i - 1].score)
        throw InputError("n-best list for '" + utt_id + "': score at rank " +
                         std::to_string(hyps[i].rank) +
                         " exceeds the previous rank's score");
    }
  }
}

std::vector<NBestList> ReadNBestFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open " + path);
  std::vector<NBestList> lists;
  std::map<std::string, size_t> index;
  std::string line;
  int64 line_no = 0;
  while (std::getline(is, line)) {
    line_no++;
    if (line.empty()) continue;
    std::istringstream ss(line);
    Hypothesis hyp;
    std::string utt_id, rank_str, score_str;
    if (!(ss >> utt_id >> rank_str >> score_str))
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": expected '<utt_id> <rank> <score> <words...>'");
    try {
      size_t used;
      hyp.rank = std::stoi(rank_str, &used);
      if (used != rank_str.size()) throw std::invalid_argument(rank_str);
      hyp.score = std::stod(score_str, &used);
      if (used != score_str.size()) throw std::invalid_argument(score_str);
    } catch (const std::exception &) {
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": bad rank or score field");
    }
    std::string word;
    while (ss >> word) hyp.words.push_back(word);

    auto it = index.find(utt_id);
    if (it == index.end()) {
      index[utt_id] = lists.size();
      lists.push_back(NBestList{utt_id, {}});
      it = index.find(utt_id);
    }
    lists[it->second].hyps.push_back(std::move(hyp));
  }
  for (NBestList &list : lists) {
    std::stable_sort(list.hyps.begin(), list.hyps.end(),
                     [](const Hypothesis &a, const Hypothesis &b) {
                       return a.rank < b.rank;
                     });
    list.Validate();
  }
  return lists;
}

std::vector<RefTranscript> ReadRefFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open " + path);
  std::vector<RefTranscript> refs;
  std::map<std::string, bool> seen;
  std::string line;
  int64 line_no = 0;
  while (std::getline(is, line)) {
    line_no++;
    if (line.empty()) continue;
    std::istringstream ss(line);
    RefTranscript ref;
    if (!(ss >> ref.utt_id))
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": expected '<utt_id> <words...>'");
    if (seen.count(ref.utt_id))
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": duplicate utt_id '" + ref.utt_id + "'");
    seen[ref.utt_id] = true;
    std::string word;
    while (ss >> word) ref.words.push_back(word);
    refs.push_back(std::move(ref));
  }
  return refs;
}

std::vector<double> NBestWeights(const NBestList &list, double scale) {
  if (scale <= 0.0)
    throw ConfigError("n-best weights: scale must be positive, got " +
                      std::to_string(scale));
  list.Validate();
  double mx = list.hyps[0].score;
  for (const Hypothesis &h : list.hyps) mx = std::max(mx, h.score);
  std::vector<double> w(list.hyps.size());
  double sum = 0.0;
  for (size_t i = 0; i < w.size(); i++) {
    w[i] = std::exp(scale * (list.hyps[i].score - mx));
    sum += w[i];
  }
  for (double &v : w) v /= sum;
  return w;
}

}  // namespace mvfe
