// am/nnet-train.h

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

#ifndef XLASR_AM_NNET_TRAIN_H_
#define XLASR_AM_NNET_TRAIN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "am/acoustic-model.h"

namespace xlasr {

struct TrainingUtterance {
  std::string utt_id;
  FeatureMatrix feats;      // raw features; CMVN is applied internally
  std::vector<int> labels;  // one state id per frame
};

enum class LrSchedule {
  kNewbob,  // halve on small held-out gains, reject epochs that get worse
  kFixed,   // constant rate for exactly max_epochs
};

struct TrainConfig {
  int hidden_layers = 4;
  int hidden_dim = 512;
  Activation activation = Activation::kSigmoid;
  int context = 5;

  double learning_rate = 0.5;  // applied to the batch-mean gradient
  LrSchedule schedule = LrSchedule::kNewbob;
  double min_improvement = 0.001;  // relative held-out gain that counts
  double halving_factor = 0.5;
  int max_halvings_without_improvement = 2;
  int minibatch_size = 256;
  int max_epochs = 20;
  double heldout_fraction = 0.1;  // utterance-level split, newbob only
  uint64_t seed = 777;
  // "none", "all-but-last", or a comma-separated list of layer indices.
  std::string frozen_layers = "none";

  void Check() const;
  // Defaults for output-layer adaptation derived from a training config:
  // 5 epochs at a tenth of the training learning rate, fixed schedule,
  // everything but the last layer frozen.
  static TrainConfig AdaptationDefaults(const TrainConfig &training);
};

// frozen[i] is true when layer i must not change.
std::vector<bool> FrozenMask(const std::string &selector, int num_layers);

struct TrainResult {
  AcousticModel model;
  std::vector<double> heldout_loss;  // [0] before training, then per epoch
  std::vector<double> train_loss;    // mean minibatch loss per epoch
  std::vector<double> learning_rates;
  double initial_train_loss = 0.0;  // full pass before the first update
  double final_train_loss = 0.0;    // full pass with the returned model
  int epochs_run = 0;
  int num_frames = 0;
  int num_heldout_frames = 0;
};

// Trains a new network on `data` with output layer |state_map|. Warns about
// states without any frame; throws on out-of-range labels or a non-finite
// loss.
TrainResult TrainAcousticModel(const std::vector<TrainingUtterance> &data,
                               const StateMap &state_map,
                               const std::string &feature_fingerprint,
                               const TrainConfig &config);

// Continues training an existing model (all parameters named trainable by
// config.frozen_layers). Priors are re-estimated from `data`.
TrainResult ContinueTraining(const AcousticModel &model,
                             const std::vector<TrainingUtterance> &data,
                             const TrainConfig &config);

// Output-layer transfer learning. `labels_map` is the state map the labels
// refer to and must equal the model's. Only the layers left trainable by
// config.frozen_layers (default: the last one) change; frozen layers and the
// priors are carried over bit-for-bit.
TrainResult AdaptAcousticModel(const AcousticModel &model,
                               const std::vector<TrainingUtterance> &data,
                               const StateMap &labels_map, const TrainConfig &config);

// Mean per-frame cross-entropy of the model on labelled data.
double MeanCrossEntropy(const AcousticModel &model,
                        const std::vector<TrainingUtterance> &data);
// Fraction of frames whose argmax posterior equals the label.
double FrameAccuracy(const AcousticModel &model, const std::vector<TrainingUtterance> &data);

}  // namespace xlasr

#endif  // XLASR_AM_NNET_TRAIN_H_
