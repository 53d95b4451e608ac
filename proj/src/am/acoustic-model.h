// am/acoustic-model.h

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

#ifndef XLASR_AM_ACOUSTIC_MODEL_H_
#define XLASR_AM_ACOUSTIC_MODEL_H_

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "am/nnet.h"
#include "am/state-map.h"
#include "frontend/features.h"

namespace xlasr {

struct ModelMetadata {
  uint64_t seed = 0;
  int epochs = 0;
  bool adapted = false;
  int adaptation_epochs = 0;
  std::vector<int> adapted_layers;  // layers whose parameters adaptation updated
  bool adaptation_updates_bias = true;
  std::string notes;
};

/// Hybrid acoustic model: network over spliced, per-utterance CMVN'd
/// features producing HMM-state posteriors, plus the state priors used to
/// turn them into scaled likelihoods.
///
/// Model file layout (little-endian):
///   "XLAM" | u32 version (=1) | u32 meta_len | meta JSON |
///   per layer: u32 rows | u32 cols | rows*cols f32 (row-major) |
///              u32 n | n f32 bias
class AcousticModel {
 public:
  Nnet<float> nnet;
  StateMap state_map;
  std::vector<double> priors;
  std::string feature_fingerprint;
  int context = 5;  // frames of left and right context
  ModelMetadata metadata;

  int NumStates() const { return state_map.NumStates(); }
  int FeatureDim() const { return nnet.InputDim() / (2 * context + 1); }
  // Throws unless shapes, priors and the state map agree.
  void Check() const;

  void Write(std::ostream &os) const;
  void Read(std::istream &is);
  bool operator==(const AcousticModel &o) const;
};

void WriteAcousticModel(const AcousticModel &model, const std::string &path);
AcousticModel ReadAcousticModel(const std::string &path);

// Hash of one layer's parameter bytes.
uint64_t LayerHash(const Nnet<float> &nnet, int layer);

// Stacks frames t-context..t+context (clamped at the edges) into one column
// per frame: ((2c+1) * dim) x frames.
Eigen::MatrixXf SpliceFrames(const FeatureData &feats, int context);

// Network input for an utterance: CMVN, then splicing.
Eigen::MatrixXf ModelInput(const AcousticModel &model, const FeatureMatrix &feats);

// Smoothed relative frequencies, (count_i + 1) / (N + K).
std::vector<double> EstimatePriors(const std::vector<std::vector<int>> &alignments,
                                   int num_states);

// frames x states posterior probabilities.
Eigen::MatrixXd ComputePosteriors(const AcousticModel &model, const FeatureMatrix &feats);

// log P(s|x) - prior_scale * log P(s), frames x states.
Eigen::MatrixXd ScaledLogLikelihoods(const AcousticModel &model,
                                     const FeatureMatrix &feats, double prior_scale = 1.0);
Eigen::MatrixXd ScaledLogLikelihoodsFromPosteriors(const Eigen::MatrixXd &posteriors,
                                                   const std::vector<double> &priors,
                                                   double prior_scale = 1.0);

}  // namespace xlasr

#endif  // XLASR_AM_ACOUSTIC_MODEL_H_
