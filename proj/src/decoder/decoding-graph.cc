// decoder/decoding-graph.cc

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

#include "decoder/decoding-graph.h"

#include "base/xlasr-common.h"

namespace xlasr {

int HmmGraph::AddNode(int pdf) {
  pdf_.push_back(pdf);
  arcs_.emplace_back();
  final_.push_back(kLogZero);
  return static_cast<int>(pdf_.size()) - 1;
}

void HmmGraph::AddArc(int from, int to, double weight, int word) {
  arcs_[from].push_back({to, weight, word});
}

void HmmGraph::AddStart(int to, double weight, int word) {
  starts_.push_back({to, weight, word});
}

void HmmGraph::SetFinal(int node, double weight) { final_[node] = weight; }

size_t HmmGraph::NumArcs() const {
  size_t n = starts_.size();
  for (const auto &a : arcs_) n += a.size();
  return n;
}

namespace {

struct Chain {
  int first;
  int last;
};

// Chain of emitting nodes for a phone sequence with self-loops and forward
// arcs; the caller connects its ends.
Chain AddPhoneChain(HmmGraph *g, const std::vector<PhoneSymbol> &phones,
                    const StateMap &state_map) {
  int first = -1, prev = -1;
  for (const auto &ph : phones) {
    int base = state_map.StateId(ph, 0);
    for (int s = 0; s < kStatesPerPhone; ++s) {
      int node = g->AddNode(base + s);
      g->AddArc(node, node, kLogHalf);
      if (prev >= 0) g->AddArc(prev, node, kLogHalf);
      if (first < 0) first = node;
      prev = node;
    }
  }
  return {first, prev};
}

void CheckPhones(const std::string &word, const Pronunciation &pron,
                 const StateMap &state_map) {
  for (const auto &ph : pron)
    if (!state_map.HasPhone(ph))
      XLASR_ERR << "word '" << word << "' uses phone '" << ph
                << "' which the acoustic model's state map lacks";
}

}  // namespace

DecodingGraph BuildDecodingGraph(const Lexicon &lexicon, const BigramLM &lm,
                                 const StateMap &state_map, const GraphScales &scales) {
  const int V = static_cast<int>(lm.NumWords());
  std::vector<std::string> missing;
  for (int w = 0; w < V; ++w)
    if (w != lm.EndId() && !lexicon.Contains(lm.Vocab()[w])) missing.push_back(lm.Vocab()[w]);
  if (!missing.empty())
    XLASR_ERR << missing.size() << " LM word(s) missing from the " << lexicon.Language()
              << " lexicon: " << JoinStrings(missing, " ");

  DecodingGraph g;
  g.word_names = lm.Vocab();
  g.num_pdfs = state_map.NumStates();
  const double penalty = scales.word_insertion_penalty;
  auto lm_weight = [&](int h, int w) { return scales.lm_scale * lm.LogProb(h, w); };

  std::vector<std::vector<Chain>> chains(V);
  for (int w = 0; w < V; ++w) {
    if (w == lm.EndId()) continue;
    for (const auto &pron : *lexicon.Lookup(lm.Vocab()[w])) {
      CheckPhones(lm.Vocab()[w], pron, state_map);
      chains[w].push_back(AddPhoneChain(&g, pron, state_map));
    }
  }
  const std::vector<PhoneSymbol> sil{StateMap::kSilence};
  // Word-end sources: the word's last states, plus its trailing silence.
  for (int w = 0; w < V; ++w) {
    if (w == lm.EndId()) continue;
    for (const Chain &c : chains[w]) g.AddStart(c.first, lm_weight(lm.StartId(), w) + penalty, w);
  }
  if (scales.optional_silence) {
    Chain lead = AddPhoneChain(&g, sil, state_map);
    g.AddStart(lead.first, scales.silence_penalty);
    for (int w = 0; w < V; ++w) {
      if (w == lm.EndId()) continue;
      for (const Chain &c : chains[w])
        g.AddArc(lead.last, c.first, kLogHalf + lm_weight(lm.StartId(), w) + penalty, w);
    }
  }
  for (int v = 0; v < V; ++v) {
    if (v == lm.EndId()) continue;
    std::vector<std::pair<int, double>> sources;  // node, extra weight on leaving
    for (const Chain &c : chains[v]) sources.emplace_back(c.last, 0.0);
    if (scales.optional_silence) {
      Chain tail = AddPhoneChain(&g, sil, state_map);
      for (const Chain &c : chains[v])
        g.AddArc(c.last, tail.first, kLogHalf + scales.silence_penalty);
      sources.emplace_back(tail.last, 0.0);
    }
    for (const auto &[node, extra] : sources) {
      g.SetFinal(node, kLogHalf + extra + lm_weight(v, lm.EndId()));
      for (int w = 0; w < V; ++w) {
        if (w == lm.EndId()) continue;
        double weight = kLogHalf + extra + lm_weight(v, w) + penalty;
        for (const Chain &c : chains[w]) g.AddArc(node, c.first, weight, w);
      }
    }
  }
  return g;
}

HmmGraph BuildTranscriptGraph(const std::vector<std::string> &transcript,
                              const Lexicon &lexicon, const StateMap &state_map) {
  if (transcript.empty()) XLASR_ERR << "cannot align an empty transcript";
  HmmGraph g;
  g.word_names = transcript;
  g.num_pdfs = state_map.NumStates();
  std::vector<Chain> prev;
  for (size_t i = 0; i < transcript.size(); ++i) {
    const auto *prons = lexicon.Lookup(transcript[i]);
    if (prons == nullptr)
      XLASR_ERR << "out-of-vocabulary word '" << transcript[i] << "' in transcript";
    std::vector<Chain> cur;
    for (const auto &pron : *prons) {
      CheckPhones(transcript[i], pron, state_map);
      Chain c = AddPhoneChain(&g, pron, state_map);
      if (i == 0) g.AddStart(c.first, 0.0, 0);
      for (const Chain &p : prev) g.AddArc(p.last, c.first, kLogHalf, static_cast<int>(i));
      cur.push_back(c);
    }
    prev = std::move(cur);
  }
  for (const Chain &p : prev) g.SetFinal(p.last, kLogHalf);
  return g;
}

}  // namespace xlasr
