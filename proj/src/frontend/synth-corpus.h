// frontend/synth-corpus.h

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

#ifndef XLASR_FRONTEND_SYNTH_CORPUS_H_
#define XLASR_FRONTEND_SYNTH_CORPUS_H_

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "corpus/alignment.h"
#include "corpus/manifest.h"
#include "frontend/features.h"
#include "lexicon/lexicon.h"

namespace xlasr {

// Diagonal Gaussians of one phone as pronounced in one language. HMM state s
// of the phone is centred at mean + state_offsets[s].
struct PhoneGaussian {
  std::vector<double> mean;
  std::array<std::vector<double>, 3> state_offsets;
  std::vector<double> variance;

  std::vector<double> StateMean(int state) const;
};

/// Feature-level stand-in for recorded speech. Native utterances draw every
/// frame from the spoken language's Gaussians. For non-native utterances
/// each phone is, with probability `substitution_rate`, replaced by the
/// nearest phone of the speaker's mother language (mispronunciation);
/// otherwise its Gaussians are pulled towards that phone,
/// (1 - a) * mu_L2 + a * mu_L1 with a = `interference_weight`.
struct SynthSpec {
  int dim = 13;
  std::map<std::pair<PhoneSymbol, LanguageCode>, PhoneGaussian> gaussians;
  double interference_weight = 0.0;
  double substitution_rate = 0.0;
  int min_frames = 6;  // per phone, inclusive
  int max_frames = 12;
  std::map<PhoneSymbol, std::pair<int, int>> duration_overrides;
  uint64_t seed = 0;

  void Check() const;
  const PhoneGaussian &Gaussian(const PhoneSymbol &phone,
                                const LanguageCode &language) const;
  bool Has(const PhoneSymbol &phone, const LanguageCode &language) const {
    return gaussians.count({phone, language}) != 0;
  }
  std::pair<int, int> DurationRange(const PhoneSymbol &phone) const;
  std::string Fingerprint() const;

  std::string ToJson() const;
  static SynthSpec FromJson(const std::string &text);
};

struct SynthSpaceParams {
  int dim = 13;
  double phone_spread = 3.0;     // stddev of phone centres
  double language_spread = 1.5;  // stddev of per-language deviation
  double state_spread = 1.0;     // stddev of per-state offsets
  double noise_variance = 1.0;   // within-state variance
};

// Random Gaussians for every (phone, language) membership of `inventory`.
// Each draw is seeded from (seed, phone, language), so the parameters of a
// phone do not depend on the rest of the inventory.
SynthSpec GenerateSynthSpec(const PhoneInventory &inventory,
                            const SynthSpaceParams &params, uint64_t seed);

// Same symbol when the mother language has it, else the mother-language phone
// whose mean is closest in Euclidean distance.
PhoneSymbol NearestPhone(const SynthSpec &spec, const PhoneSymbol &phone,
                         const LanguageCode &spoken, const LanguageCode &mother);

// Gaussians actually used for `phone` by a speaker of `mother` speaking
// `spoken`. Consumes one uniform draw from `rng` for non-native speech.
PhoneGaussian RealizePhone(const SynthSpec &spec, const PhoneSymbol &phone,
                           const LanguageCode &spoken, const LanguageCode &mother,
                           std::mt19937_64 &rng, bool *substituted);

struct SynthUtterance {
  FeatureMatrix feats;
  PhoneStateLabels oracle;  // intended spoken-language phones
  int num_phones = 0;
  int num_substituted = 0;
};

// Deterministic in (spec.seed, record.utt_id). The pronunciation of each word
// is drawn uniformly among the lexicon's alternatives.
SynthUtterance SynthesizeUtterance(const UtteranceRecord &record,
                                   const Lexicon &spoken_lexicon, const SynthSpec &spec);

std::map<std::string, SynthUtterance> SynthesizeCorpus(
    const CorpusManifest &manifest, const std::map<LanguageCode, Lexicon> &lexica,
    const SynthSpec &spec);

}  // namespace xlasr

#endif  // XLASR_FRONTEND_SYNTH_CORPUS_H_
