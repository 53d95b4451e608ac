// harness/synthetic-setup.h

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

#ifndef XLASR_HARNESS_SYNTHETIC_SETUP_H_
#define XLASR_HARNESS_SYNTHETIC_SETUP_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "corpus/manifest.h"
#include "lexicon/lexicon.h"
#include "lm/bigram-lm.h"

namespace xlasr {

// Utterances of one (L1, L2, split) block of the corpus.
struct CorpusGroup {
  LanguageCode l1;
  LanguageCode l2;
  Split split = Split::kTrain;
  int speakers = 1;
  double minutes = 0.0;  // size of the corresponding real corpus
};

// Default asymmetric corpus layout: native training and eval data for
// it/de/en, Italian speakers also speaking German and English, German
// speakers also speaking English. Speaker counts and durations (minutes)
// are those of a real native/non-native corpus.
std::vector<CorpusGroup> DefaultCorpusGroups();

struct SyntheticSetupConfig {
  std::vector<LanguageCode> languages{"it", "de", "en"};
  int words_per_language = 80;
  int min_word_phones = 3;
  int max_word_phones = 5;
  int successors_per_word = 4;  // branching of the sentence grammar
  int min_sentence_words = 3;
  int max_sentence_words = 7;
  int lm_sentences = 2000;
  // Utterances generated per minute of the real corpus, by split.
  double train_utts_per_minute = 0.5;
  double ada_utts_per_minute = 1.0;
  double eval_utts_per_minute = 1.0;
  std::vector<CorpusGroup> groups = DefaultCorpusGroups();
  uint64_t seed = 1;

  void Check() const;
  std::string ToJson() const;
  static SyntheticSetupConfig FromJson(const std::string &text);
};

/// Lexica, LM training texts and a corpus manifest with random pseudo-words.
/// Each word is a random phone string over its language's inventory (no
/// phone repeated back to back) spelled by lower-casing its phone symbols.
/// Sentences come from a random sparse bigram grammar per language, so LM
/// texts and manifest transcripts share their statistics.
struct SyntheticSetup {
  std::map<LanguageCode, Lexicon> lexica;
  std::map<LanguageCode, std::vector<Sentence>> lm_texts;
  CorpusManifest manifest;
};

SyntheticSetup GenerateSyntheticSetup(const SyntheticSetupConfig &config,
                                      const PhoneInventory &inventory);

// Writes <dir>/<lang>.lex, <dir>/<lang>.txt and <dir>/manifest.jsonl.
void WriteSyntheticSetup(const SyntheticSetup &setup, const std::string &dir);

}  // namespace xlasr

#endif  // XLASR_HARNESS_SYNTHETIC_SETUP_H_
