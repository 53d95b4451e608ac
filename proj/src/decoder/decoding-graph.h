// decoder/decoding-graph.h

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

#ifndef XLASR_DECODER_DECODING_GRAPH_H_
#define XLASR_DECODER_DECODING_GRAPH_H_

#include <limits>
#include <string>
#include <vector>

#include "am/state-map.h"
#include "lexicon/lexicon.h"
#include "lm/bigram-lm.h"

namespace xlasr {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();
// Self-loop and forward probability of every HMM state.
inline constexpr double kLogHalf = -0.69314718055994530942;

/// Frame-synchronous graph of emitting states. Each node emits the HMM state
/// `pdf` of the StateMap. Arcs carry a log weight and, when they enter a
/// word, that word's id. Every state is left exactly once per visit through
/// a 0.5 forward/exit transition and loops with 0.5, so any complete path
/// over T frames pays T * log(0.5) in transitions.
class HmmGraph {
 public:
  struct Arc {
    int to;
    double weight;
    int word;  // -1 if the arc does not start a word
  };
  struct StartArc {
    int to;
    double weight;
    int word;
  };

  int AddNode(int pdf);
  void AddArc(int from, int to, double weight, int word = -1);
  void AddStart(int to, double weight, int word = -1);
  void SetFinal(int node, double weight);

  int NumNodes() const { return static_cast<int>(pdf_.size()); }
  int Pdf(int node) const { return pdf_[node]; }
  const std::vector<Arc> &Arcs(int node) const { return arcs_[node]; }
  const std::vector<StartArc> &Starts() const { return starts_; }
  double Final(int node) const { return final_[node]; }
  size_t NumArcs() const;

  // Names for word ids used on arcs.
  std::vector<std::string> word_names;
  int num_pdfs = 0;

 private:
  std::vector<int> pdf_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<StartArc> starts_;
  std::vector<double> final_;
};

struct GraphScales {
  double lm_scale = 1.0;
  double word_insertion_penalty = 0.0;  // added per word (log domain)
  bool optional_silence = false;        // between words and at the edges
  double silence_penalty = -2.0;        // log weight of entering silence
};

using DecodingGraph = HmmGraph;

// Word loop over the LM vocabulary: every pronunciation becomes a chain of
// 3-state phone HMMs; word-to-word arcs carry lm_scale * log P(w|v) plus the
// insertion penalty, and each word end is final with lm_scale * log P(</s>|v).
// Word ids are the LM's ids. Throws, listing them, if LM words are missing
// from the lexicon, or if a phone is not in the state map.
DecodingGraph BuildDecodingGraph(const Lexicon &lexicon, const BigramLM &lm,
                                 const StateMap &state_map, const GraphScales &scales);

// Linear graph that accepts exactly `transcript` (any pronunciation of each
// word). Word ids are transcript positions.
HmmGraph BuildTranscriptGraph(const std::vector<std::string> &transcript,
                              const Lexicon &lexicon, const StateMap &state_map);

}  // namespace xlasr

#endif  // XLASR_DECODER_DECODING_GRAPH_H_
