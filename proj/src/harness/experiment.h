// harness/experiment.h

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

#ifndef XLASR_HARNESS_EXPERIMENT_H_
#define XLASR_HARNESS_EXPERIMENT_H_

#include <map>
#include <string>
#include <vector>

#include "am/acoustic-model.h"
#include "corpus/alignment.h"
#include "harness/experiment-config.h"
#include "harness/result-matrix.h"
#include "lm/bigram-lm.h"

namespace xlasr {

// Environment variable naming the artifact cache directory.
inline constexpr const char *kCacheDirEnv = "XLASR_CACHE_DIR";

/// Everything an experiment reads: inventory, lexica, LMs, manifest and the
/// features (with oracle labels for synthetic utterances).
struct ExperimentData {
  PhoneInventory inventory;  // restricted to the configured languages
  std::map<LanguageCode, Lexicon> lexica;
  std::map<LanguageCode, std::vector<Sentence>> lm_texts;
  std::map<LanguageCode, BigramLM> lms;
  CorpusManifest manifest;
  SynthSpec synth;
  std::map<std::string, FeatureMatrix> feats;
  std::map<std::string, PhoneStateLabels> oracle;  // synthetic utterances only
  std::string content_hash;  // lexica, LM texts, manifest and synthesis
};

// Loads (or generates) the data and computes features. Throws ConfigError
// for unreadable or inconsistent inputs and StageError for feature failures.
ExperimentData PrepareExperimentData(const ExperimentConfig &config);

// Trains LMs and synthesizes features for an already assembled data set
// (lexica, LM texts and manifest filled in).
void FinishExperimentData(const ExperimentConfig &config, ExperimentData *data);

struct ExperimentOptions {
  std::string output_dir;  // empty: no artifacts written
  std::string cache_dir;   // empty: no cache
  int num_threads = 1;     // decoding of independent cells
};

struct ExperimentResults {
  std::string config_hash;
  std::vector<ResultMatrix> matrices;  // one per run, in config order
  std::string ToJson() const { return ResultsToJson(matrices, config_hash); }
};

/// Runs every configured run: flat-start alignment, training with
/// `realign_iterations` realign/retrain passes, adaptation, decoding of all
/// populated (L1, L2) eval pairs and scoring. Base and adapted models are
/// shared between runs and cached under options.cache_dir.
ExperimentResults RunExperiment(const ExperimentConfig &config, const ExperimentData &data,
                                const ExperimentOptions &options);

// Cache directory from XLASR_CACHE_DIR, or empty.
std::string CacheDirFromEnvironment();

}  // namespace xlasr

#endif  // XLASR_HARNESS_EXPERIMENT_H_
