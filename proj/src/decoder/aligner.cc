// decoder/aligner.cc

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

#include "decoder/aligner.h"

#include <algorithm>

#include "base/xlasr-common.h"
#include "decoder/decoding-graph.h"
#include "decoder/viterbi.h"

namespace xlasr {

namespace {

const Pronunciation &FirstPronunciation(const std::string &word, const Lexicon &lexicon) {
  const auto *prons = lexicon.Lookup(word);
  if (prons == nullptr) XLASR_ERR << "out-of-vocabulary word '" << word << "' in transcript";
  return prons->front();
}

int MinimumFrames(const std::vector<std::string> &transcript, const Lexicon &lexicon) {
  int total = 0;
  for (const auto &w : transcript) {
    const auto *prons = lexicon.Lookup(w);
    if (prons == nullptr) XLASR_ERR << "out-of-vocabulary word '" << w << "' in transcript";
    size_t shortest = prons->front().size();
    for (const auto &p : *prons) shortest = std::min(shortest, p.size());
    total += static_cast<int>(shortest) * kStatesPerPhone;
  }
  return total;
}

}  // namespace

Alignment FlatStartAlign(const std::vector<std::string> &transcript, const Lexicon &lexicon,
                         const StateMap &state_map, int num_frames) {
  if (transcript.empty()) XLASR_ERR << "cannot align an empty transcript";
  std::vector<int> states;
  for (const auto &w : transcript)
    for (const auto &ph : FirstPronunciation(w, lexicon)) {
      if (!state_map.HasPhone(ph))
        XLASR_ERR << "word '" << w << "' uses phone '" << ph << "' missing from the state map";
      for (int s = 0; s < kStatesPerPhone; ++s) states.push_back(state_map.StateId(ph, s));
    }
  const int64_t m = static_cast<int64_t>(states.size());
  if (num_frames < m)
    XLASR_ERR << "utterance too short: " << num_frames << " frames for " << m
              << " mandatory HMM states";
  Alignment ali;
  ali.frame_states.resize(num_frames);
  for (int64_t t = 0; t < num_frames; ++t) ali.frame_states[t] = states[t * m / num_frames];
  ali.segments = state_map.SegmentsOf(ali.frame_states);
  return ali;
}

Alignment AlignLogLikelihoods(const Eigen::MatrixXd &loglik,
                              const std::vector<std::string> &transcript,
                              const Lexicon &lexicon, const StateMap &state_map) {
  if (transcript.empty()) XLASR_ERR << "cannot align an empty transcript";
  int needed = MinimumFrames(transcript, lexicon);
  if (loglik.rows() < needed)
    XLASR_ERR << "utterance too short: " << loglik.rows() << " frames for " << needed
              << " mandatory HMM states";
  HmmGraph graph = BuildTranscriptGraph(transcript, lexicon, state_map);
  DecodeResult r = ViterbiDecode(graph, loglik);
  if (!r.reached_final) XLASR_ERR << "no alignment path reaches the end of the transcript";
  Alignment ali = std::move(r.alignment);
  ali.segments = state_map.SegmentsOf(ali.frame_states);
  return ali;
}

Alignment AlignUtterance(const AcousticModel &model, const FeatureMatrix &feats,
                         const std::vector<std::string> &transcript, const Lexicon &lexicon,
                         double prior_scale) {
  return AlignLogLikelihoods(ScaledLogLikelihoods(model, feats, prior_scale), transcript,
                             lexicon, model.state_map);
}

double FrameAgreement(const std::vector<int> &a, const std::vector<int> &b) {
  if (a.size() != b.size())
    XLASR_ERR << "alignments differ in length: " << a.size() << " vs " << b.size();
  if (a.empty()) return 1.0;
  size_t same = 0;
  for (size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return static_cast<double>(same) / a.size();
}

}  // namespace xlasr
