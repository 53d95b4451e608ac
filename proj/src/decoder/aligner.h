// decoder/aligner.h

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

#ifndef XLASR_DECODER_ALIGNER_H_
#define XLASR_DECODER_ALIGNER_H_

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "am/acoustic-model.h"
#include "corpus/alignment.h"
#include "lexicon/lexicon.h"

namespace xlasr {

// Uniform segmentation: with the first pronunciation of every word giving m
// HMM states, frame t gets state floor(t * m / num_frames). Throws if
// num_frames < m or a word is out of vocabulary.
Alignment FlatStartAlign(const std::vector<std::string> &transcript, const Lexicon &lexicon,
                         const StateMap &state_map, int num_frames);

// Viterbi path through the transcript's pronunciation chain(s) for a frames x
// states log-likelihood matrix. Throws if the utterance is shorter than the
// shortest mandatory path.
Alignment AlignLogLikelihoods(const Eigen::MatrixXd &loglik,
                              const std::vector<std::string> &transcript,
                              const Lexicon &lexicon, const StateMap &state_map);

Alignment AlignUtterance(const AcousticModel &model, const FeatureMatrix &feats,
                         const std::vector<std::string> &transcript, const Lexicon &lexicon,
                         double prior_scale = 1.0);

// Fraction of frames whose state ids agree.
double FrameAgreement(const std::vector<int> &a, const std::vector<int> &b);

}  // namespace xlasr

#endif  // XLASR_DECODER_ALIGNER_H_
