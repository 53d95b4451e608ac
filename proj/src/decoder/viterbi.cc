// decoder/viterbi.cc

// Copyright 2026  xlasr authors

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

#include "decoder/viterbi.h"

#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "base/xlasr-common.h"

namespace xlasr {

namespace {

// Hash-consed word histories; equal sequences share one id.
class HistoryTable {
 public:
  HistoryTable() { entries_.push_back({-1, -1, 0}); }

  static constexpr int kRoot = 0;

  int Extend(int parent, int word) {
    uint64_t key = (static_cast<uint64_t>(parent) << 32) | static_cast<uint32_t>(word);
    auto [it, inserted] = index_.emplace(key, static_cast<int>(entries_.size()));
    if (inserted) entries_.push_back({parent, word, entries_[parent].depth + 1});
    return it->second;
  }

  // Shortlex comparison of two histories: -1, 0 or 1.
  int Compare(int a, int b) const {
    if (a == b) return 0;
    if (Depth(a) != Depth(b)) return Depth(a) < Depth(b) ? -1 : 1;
    while (entries_[a].parent != entries_[b].parent) {
      a = entries_[a].parent;
      b = entries_[b].parent;
    }
    return entries_[a].word < entries_[b].word ? -1 : 1;
  }

  // Compares history a (+ word wa if wa >= 0) with b (+ wb if wb >= 0)
  // without materializing the extensions.
  int CompareExtended(int a, int wa, int b, int wb) const {
    int la = Depth(a) + (wa >= 0), lb = Depth(b) + (wb >= 0);
    if (la != lb) return la < lb ? -1 : 1;
    if ((wa >= 0) == (wb >= 0)) {
      int c = Compare(a, b);
      if (c != 0 || wa < 0) return c;
      return wa == wb ? 0 : (wa < wb ? -1 : 1);
    }
    if (wa >= 0) {
      int c = Compare(a, entries_[b].parent);
      if (c != 0) return c;
      int last = entries_[b].word;
      return wa == last ? 0 : (wa < last ? -1 : 1);
    }
    return -CompareExtended(b, wb, a, wa);
  }

  int Depth(int h) const { return entries_[h].depth; }

  std::vector<int> Words(int h) const {
    std::vector<int> out(Depth(h));
    for (int i = Depth(h) - 1; i >= 0; --i, h = entries_[h].parent) out[i] = entries_[h].word;
    return out;
  }

 private:
  struct Entry {
    int parent;
    int word;
    int depth;
  };
  std::vector<Entry> entries_;
  std::unordered_map<uint64_t, int> index_;
};

struct Candidate {
  double score = kLogZero;
  int hist = HistoryTable::kRoot;  // base history
  int word = -1;                   // pending extension
  int from = -1;                   // predecessor node (-1: start)
};

}  // namespace

DecodeResult ViterbiDecode(const HmmGraph &graph, const Eigen::MatrixXd &loglik,
                           const DecodeOptions &options) {
  DecodeResult res;
  const int T = static_cast<int>(loglik.rows());
  if (T == 0) return res;
  if (loglik.cols() != graph.num_pdfs)
    XLASR_ERR << "log-likelihood matrix has " << loglik.cols() << " columns, graph expects "
              << graph.num_pdfs;
  if (!loglik.allFinite()) XLASR_ERR << "log-likelihoods must be finite";

  const int N = graph.NumNodes();
  HistoryTable hist;
  std::vector<double> score(N, kLogZero), next_score(N);
  std::vector<int> node_hist(N, HistoryTable::kRoot), next_hist(N);
  std::vector<Candidate> cand(N);
  std::vector<int> backptr(static_cast<size_t>(T) * N, -1);
  std::vector<int> active, next_active;
  std::vector<char> touched(N, 0);

  auto offer = [&](int to, double s, int base, int word, int from) {
    Candidate &c = cand[to];
    if (!touched[to]) {
      touched[to] = 1;
      next_active.push_back(to);
      c = {s, base, word, from};
      return;
    }
    if (s > c.score ||
        (s == c.score && hist.CompareExtended(base, word, c.hist, c.word) < 0))
      c = {s, base, word, from};
  };

  for (int t = 0; t < T; ++t) {
    next_active.clear();
    if (t == 0) {
      for (const auto &st : graph.Starts()) offer(st.to, st.weight, HistoryTable::kRoot, st.word, -1);
    } else {
      for (int i : active) {
        const double s = score[i];
        for (const auto &arc : graph.Arcs(i)) offer(arc.to, s + arc.weight, node_hist[i], arc.word, i);
      }
    }
    double best = kLogZero;
    for (int j : next_active) {
      const Candidate &c = cand[j];
      next_score[j] = c.score + loglik(t, graph.Pdf(j));
      next_hist[j] = c.word >= 0 ? hist.Extend(c.hist, c.word) : c.hist;
      backptr[static_cast<size_t>(t) * N + j] = c.from;
      if (next_score[j] > best) best = next_score[j];
    }
    for (int i : active) score[i] = kLogZero;
    active.clear();
    for (int j : next_active) {
      touched[j] = 0;
      if (next_score[j] == kLogZero || next_score[j] < best - options.beam) continue;
      score[j] = next_score[j];
      node_hist[j] = next_hist[j];
      active.push_back(j);
    }
  }

  int best_node = -1;
  double best_score = kLogZero;
  for (int j : active) {
    double f = graph.Final(j);
    if (f == kLogZero) continue;
    double s = score[j] + f;
    if (best_node < 0 || s > best_score ||
        (s == best_score && hist.Compare(node_hist[j], node_hist[best_node]) < 0)) {
      best_node = j;
      best_score = s;
    }
  }
  if (best_node < 0) return res;

  res.reached_final = true;
  res.score = best_score;
  res.word_ids = hist.Words(node_hist[best_node]);
  for (int w : res.word_ids) res.words.push_back(graph.word_names.at(w));
  res.node_path.resize(T);
  int node = best_node;
  for (int t = T - 1; t >= 0; --t) {
    res.node_path[t] = node;
    node = backptr[static_cast<size_t>(t) * N + node];
  }
  res.alignment.frame_states.resize(T);
  for (int t = 0; t < T; ++t) res.alignment.frame_states[t] = graph.Pdf(res.node_path[t]);
  return res;
}

}  // namespace xlasr
