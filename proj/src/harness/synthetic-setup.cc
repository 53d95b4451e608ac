// harness/synthetic-setup.cc

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

#include "harness/synthetic-setup.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "base/xlasr-common.h"
#include "json.hpp"

namespace xlasr {

std::vector<CorpusGroup> DefaultCorpusGroups() {
  return {
      {"it", "it", Split::kTrain, 115, 435.9}, {"de", "de", Split::kTrain, 168, 465.5},
      {"en", "en", Split::kTrain, 70, 364.8},  {"it", "it", Split::kEval, 42, 157.1},
      {"de", "de", Split::kEval, 11, 81.3},    {"en", "en", Split::kEval, 30, 100.6},
      {"it", "de", Split::kAda, 9, 29.9},      {"it", "en", Split::kAda, 21, 58.4},
      {"de", "en", Split::kAda, 42, 30.3},     {"it", "de", Split::kEval, 13, 46.2},
      {"it", "en", Split::kEval, 27, 76.5},    {"de", "en", Split::kEval, 52, 43.2},
  };
}

void SyntheticSetupConfig::Check() const {
  if (languages.empty()) XLASR_ERR << "synthetic setup needs at least one language";
  if (words_per_language < 1) XLASR_ERR << "words_per_language must be positive";
  if (min_word_phones < 1 || max_word_phones < min_word_phones)
    XLASR_ERR << "bad word length range";
  if (successors_per_word < 1) XLASR_ERR << "successors_per_word must be positive";
  if (min_sentence_words < 1 || max_sentence_words < min_sentence_words)
    XLASR_ERR << "bad sentence length range";
  if (lm_sentences < 1) XLASR_ERR << "lm_sentences must be positive";
  if (train_utts_per_minute < 0 || ada_utts_per_minute < 0 || eval_utts_per_minute < 0)
    XLASR_ERR << "utterance rates must be non-negative";
  std::set<LanguageCode> langs(languages.begin(), languages.end());
  for (const auto &g : groups) {
    if (!langs.count(g.l1) || !langs.count(g.l2))
      XLASR_ERR << "corpus group " << g.l1 << "->" << g.l2 << " uses an unlisted language";
    if (g.speakers < 1 || g.minutes < 0) XLASR_ERR << "bad corpus group " << g.l1 << "->" << g.l2;
  }
}

std::string SyntheticSetupConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["languages"] = languages;
  j["words_per_language"] = words_per_language;
  j["min_word_phones"] = min_word_phones;
  j["max_word_phones"] = max_word_phones;
  j["successors_per_word"] = successors_per_word;
  j["min_sentence_words"] = min_sentence_words;
  j["max_sentence_words"] = max_sentence_words;
  j["lm_sentences"] = lm_sentences;
  j["train_utts_per_minute"] = train_utts_per_minute;
  j["ada_utts_per_minute"] = ada_utts_per_minute;
  j["eval_utts_per_minute"] = eval_utts_per_minute;
  auto &gs = j["groups"] = nlohmann::ordered_json::array();
  for (const auto &g : groups)
    gs.push_back({{"l1", g.l1}, {"l2", g.l2}, {"split", SplitName(g.split)},
                  {"speakers", g.speakers}, {"minutes", g.minutes}});
  j["seed"] = seed;
  return j.dump();
}

SyntheticSetupConfig SyntheticSetupConfig::FromJson(const std::string &text) {
  SyntheticSetupConfig c;
  try {
    auto j = nlohmann::json::parse(text);
    c.languages = j.value("languages", c.languages);
    c.words_per_language = j.value("words_per_language", c.words_per_language);
    c.min_word_phones = j.value("min_word_phones", c.min_word_phones);
    c.max_word_phones = j.value("max_word_phones", c.max_word_phones);
    c.successors_per_word = j.value("successors_per_word", c.successors_per_word);
    c.min_sentence_words = j.value("min_sentence_words", c.min_sentence_words);
    c.max_sentence_words = j.value("max_sentence_words", c.max_sentence_words);
    c.lm_sentences = j.value("lm_sentences", c.lm_sentences);
    c.train_utts_per_minute = j.value("train_utts_per_minute", c.train_utts_per_minute);
    c.ada_utts_per_minute = j.value("ada_utts_per_minute", c.ada_utts_per_minute);
    c.eval_utts_per_minute = j.value("eval_utts_per_minute", c.eval_utts_per_minute);
    if (j.contains("groups")) {
      c.groups.clear();
      for (const auto &g : j.at("groups"))
        c.groups.push_back({g.at("l1").get<std::string>(), g.at("l2").get<std::string>(),
                            ParseSplit(g.at("split").get<std::string>()),
                            g.at("speakers").get<int>(), g.at("minutes").get<double>()});
    }
    c.seed = j.value("seed", c.seed);
  } catch (const nlohmann::json::exception &e) {
    XLASR_ERR << "bad synthetic setup config: " << e.what();
  }
  c.Check();
  return c;
}

namespace {

std::string Spell(const Pronunciation &pron) {
  std::string s;
  for (const auto &ph : pron)
    for (unsigned char ch : ph)
      if (std::isalpha(ch)) s.push_back(static_cast<char>(std::tolower(ch)));
  return s;
}

// Sparse random bigram grammar; successors[v] for v = word index, with
// v == V standing for the sentence start.
struct Grammar {
  std::vector<std::string> words;
  std::vector<std::vector<int>> successors;
  std::vector<std::discrete_distribution<int>> choice;
};

Grammar MakeGrammar(std::vector<std::string> words, int branching, std::mt19937_64 &rng) {
  Grammar g;
  g.words = std::move(words);
  const int V = static_cast<int>(g.words.size());
  const int k = std::min(branching, V);
  std::uniform_real_distribution<double> weight(0.2, 1.0);
  for (int v = 0; v <= V; ++v) {
    std::vector<int> all(V);
    for (int i = 0; i < V; ++i) all[i] = i;
    for (int i = 0; i < k; ++i) {
      std::uniform_int_distribution<int> pick(i, V - 1);
      std::swap(all[i], all[pick(rng)]);
    }
    all.resize(k);
    std::vector<double> w(k);
    for (auto &x : w) x = weight(rng);
    g.successors.push_back(std::move(all));
    g.choice.emplace_back(w.begin(), w.end());
  }
  return g;
}

Sentence GenerateSentence(Grammar &g, int min_len, int max_len, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> len_dist(min_len, max_len);
  const int len = len_dist(rng);
  Sentence s;
  int prev = static_cast<int>(g.words.size());
  for (int i = 0; i < len; ++i) {
    int w = g.successors[prev][g.choice[prev](rng)];
    s.push_back(g.words[w]);
    prev = w;
  }
  return s;
}

}  // namespace

SyntheticSetup GenerateSyntheticSetup(const SyntheticSetupConfig &config,
                                      const PhoneInventory &inventory) {
  config.Check();
  SyntheticSetup setup;
  std::map<LanguageCode, Grammar> grammars;
  for (const auto &lang : config.languages) {
    std::vector<PhoneSymbol> phones = inventory.Restrict(lang).Phones();
    if (phones.size() < 2) XLASR_ERR << "language " << lang << " has fewer than two phones";
    std::mt19937_64 rng(MixSeed(config.seed, "lexicon:" + lang));
    std::uniform_int_distribution<int> len_dist(config.min_word_phones, config.max_word_phones);
    std::uniform_int_distribution<size_t> phone_dist(0, phones.size() - 1);
    Lexicon lex(lang);
    std::vector<std::string> words;
    std::set<std::string> seen;
    int attempts = 0;
    while (static_cast<int>(words.size()) < config.words_per_language) {
      if (++attempts > 1000 * config.words_per_language)
        XLASR_ERR << "cannot draw " << config.words_per_language << " distinct words for "
                  << lang;
      Pronunciation pron;
      const int n = len_dist(rng);
      while (static_cast<int>(pron.size()) < n) {
        const PhoneSymbol &p = phones[phone_dist(rng)];
        if (pron.empty() || pron.back() != p) pron.push_back(p);
      }
      std::string word = Spell(pron);
      if (word.empty() || !seen.insert(word).second) continue;
      lex.AddPronunciation(word, pron);
      words.push_back(word);
    }
    std::sort(words.begin(), words.end());
    std::mt19937_64 grammar_rng(MixSeed(config.seed, "grammar:" + lang));
    grammars.emplace(lang, MakeGrammar(words, config.successors_per_word, grammar_rng));
    std::mt19937_64 text_rng(MixSeed(config.seed, "lmtext:" + lang));
    auto &text = setup.lm_texts[lang];
    for (int i = 0; i < config.lm_sentences; ++i)
      text.push_back(GenerateSentence(grammars.at(lang), config.min_sentence_words,
                                      config.max_sentence_words, text_rng));
    setup.lexica.emplace(lang, std::move(lex));
  }

  for (const auto &g : config.groups) {
    double rate = g.split == Split::kTrain ? config.train_utts_per_minute
                  : g.split == Split::kAda ? config.ada_utts_per_minute
                                           : config.eval_utts_per_minute;
    const int n = static_cast<int>(std::lround(g.minutes * rate));
    const std::string tag = g.l1 + g.l2 + "-" + SplitName(g.split);
    std::mt19937_64 rng(MixSeed(config.seed, "corpus:" + tag));
    const int speakers = std::max(1, std::min(g.speakers, n));
    for (int i = 0; i < n; ++i) {
      char buf[64];
      UtteranceRecord r;
      std::snprintf(buf, sizeof(buf), "%s-s%03d", tag.c_str(), i % speakers);
      r.speaker_id = buf;
      std::snprintf(buf, sizeof(buf), "%s-s%03d-u%04d", tag.c_str(), i % speakers, i);
      r.utt_id = buf;
      r.mother_language = g.l1;
      r.spoken_language = g.l2;
      r.split = g.split;
      r.transcript = GenerateSentence(grammars.at(g.l2), config.min_sentence_words,
                                      config.max_sentence_words, rng);
      setup.manifest.Add(std::move(r));
    }
  }
  setup.manifest.Validate();
  return setup;
}

void WriteSyntheticSetup(const SyntheticSetup &setup, const std::string &dir) {
  std::filesystem::create_directories(dir);
  for (const auto &[lang, lex] : setup.lexica) WriteLexicon(lex, dir + "/" + lang + ".lex");
  for (const auto &[lang, text] : setup.lm_texts) {
    std::string out;
    for (const auto &s : text) out += JoinStrings(s, " ") + "\n";
    WriteStringToFile(dir + "/" + lang + ".txt", out);
  }
  WriteManifest(setup.manifest, dir + "/manifest.jsonl");
}

}  // namespace xlasr
