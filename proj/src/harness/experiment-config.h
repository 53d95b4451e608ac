// harness/experiment-config.h

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

#ifndef XLASR_HARNESS_EXPERIMENT_CONFIG_H_
#define XLASR_HARNESS_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "am/nnet-train.h"
#include "base/xlasr-common.h"
#include "decoder/decoding-graph.h"
#include "frontend/features.h"
#include "frontend/synth-corpus.h"
#include "harness/modality.h"
#include "harness/synthetic-setup.h"

namespace xlasr {

// Invalid or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &msg) : Error(msg) {}
};

// A pipeline stage failed; the message names the stage and utterance.
class StageError : public Error {
 public:
  StageError(const std::string &stage, const std::string &msg)
      : Error("stage '" + stage + "' failed: " + msg), stage_(stage) {}
  const std::string &Stage() const { return stage_; }

 private:
  std::string stage_;
};

struct AdaptationSettings {
  int epochs = 5;
  double learning_rate = 0.0;  // <= 0: a tenth of the training rate
  std::string frozen_layers = "all-but-last";
  // "raw" pools the selected sets as they are; "balanced" repeats the
  // utterances of smaller (L1, L2) sets so every set contributes about as
  // many utterances as the largest one.
  std::string pooling = "raw";
};

struct DecoderSettings {
  GraphScales scales;
  double beam = std::numeric_limits<double>::infinity();
  double prior_scale = 1.0;
};

struct RunSpec {
  std::string name;
  ModelKind model;
  AdaptationModality adaptation;
};

/// Declarative experiment description (JSON, "version": 1). Relative paths
/// are resolved against the directory of the config file.
struct ExperimentConfig {
  static constexpr int kVersion = 1;

  std::string name = "experiment";
  std::vector<LanguageCode> languages;
  std::string inventory = "reference";  // or a path in inventory format
  std::map<LanguageCode, std::string> lexica;
  std::map<LanguageCode, std::string> lm_texts;
  std::string manifest;
  // When set, lexica, LM texts and manifest are generated instead of read.
  std::optional<SyntheticSetupConfig> synthetic_setup;

  uint64_t seed = 1;
  SynthSpaceParams synth_space;
  double interference_weight = 0.6;
  double substitution_rate = 0.2;
  int min_phone_frames = 6;
  int max_phone_frames = 12;
  FeatureConfig frontend;  // for WAV sources

  TrainConfig am;
  int realign_iterations = 2;
  AdaptationSettings adaptation;
  DecoderSettings decoder;
  std::vector<RunSpec> runs;

  std::string base_dir = ".";  // not serialized

  // Throws ConfigError.
  void Check() const;
  std::string ResolvePath(const std::string &path) const;
  // Canonical JSON; the hash is taken over it.
  std::string ToJson() const;
  std::string Hash() const;
  TrainConfig AdaptationTrainConfig() const;
};

// Throws ConfigError on syntax errors, unknown keys or bad values.
ExperimentConfig ParseExperimentConfig(const std::string &text,
                                       const std::string &base_dir = ".");
ExperimentConfig ReadExperimentConfig(const std::string &path);

}  // namespace xlasr

#endif  // XLASR_HARNESS_EXPERIMENT_CONFIG_H_
