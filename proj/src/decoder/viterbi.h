// decoder/viterbi.h

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

#ifndef XLASR_DECODER_VITERBI_H_
#define XLASR_DECODER_VITERBI_H_

#include <Eigen/Dense>

#include <limits>
#include <string>
#include <vector>

#include "corpus/alignment.h"
#include "decoder/decoding-graph.h"

namespace xlasr {

struct DecodeOptions {
  // Prune nodes scoring more than `beam` below the frame's best.
  double beam = std::numeric_limits<double>::infinity();
};

struct DecodeResult {
  bool reached_final = false;  // false: no complete path (or zero frames)
  std::vector<int> word_ids;
  std::vector<std::string> words;
  double score = kLogZero;
  std::vector<int> node_path;  // graph node per frame
  Alignment alignment;         // frame_states = pdf per frame
};

/// Viterbi search over `graph` for a frames x pdfs log-likelihood matrix.
///
/// With an infinite beam the result maximizes the total path score
/// (emissions + transitions + arc weights + final weight). Among equal
/// scores the word-id sequence that is smallest in shortlex order wins:
/// fewer words first, then lexicographically smaller ids. (Shortlex is
/// preserved under appending words, which keeps the tie-break exact inside
/// the dynamic programme.) Zero frames give an empty hypothesis.
DecodeResult ViterbiDecode(const HmmGraph &graph, const Eigen::MatrixXd &loglik,
                           const DecodeOptions &options = {});

}  // namespace xlasr

#endif  // XLASR_DECODER_VITERBI_H_
