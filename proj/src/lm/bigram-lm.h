// lm/bigram-lm.h

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

#ifndef XLASR_LM_BIGRAM_LM_H_
#define XLASR_LM_BIGRAM_LM_H_

#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace xlasr {

using Sentence = std::vector<std::string>;

inline constexpr const char *kSentenceStart = "<s>";
inline constexpr const char *kSentenceEnd = "</s>";

/// Interpolated Witten-Bell bigram model over a closed vocabulary.
///
///   P(w|v) = (c(v,w) + T(v) P_uni(w)) / (c(v) + T(v))
///
/// where c(v) counts bigram tokens with history v, T(v) the distinct
/// followers of v, and P_uni is the maximum-likelihood unigram over all
/// predicted tokens (words and </s>, never <s>). <s> is a history only.
/// Probabilities are kept as natural logs.
///
/// Word ids index the sorted vocabulary, which includes </s>. The sentence
/// start history has id StartId() == NumWords().
class BigramLM {
 public:
  struct HistoryStats {
    long count = 0;     // c(v)
    long distinct = 0;  // T(v)
    std::map<int, long> followers;
  };

  BigramLM() = default;

  size_t NumWords() const { return vocab_.size(); }
  const std::vector<std::string> &Vocab() const { return vocab_; }
  // -1 if absent.
  int WordId(const std::string &word) const;
  int EndId() const { return end_id_; }
  int StartId() const { return static_cast<int>(vocab_.size()); }
  bool InVocab(const std::string &word) const { return WordId(word) >= 0; }

  // Natural-log probabilities.
  double LogProb(int history, int word) const;
  double LogProb(const std::string &history, const std::string &word) const;
  double UnigramLogProb(int word) const { return unigram_log_[word]; }
  // log(T(v) / (c(v) + T(v))): the weight given to the unigram for unseen
  // followers of v.
  double BackoffLogWeight(int history) const { return backoff_log_[history]; }
  // Explicitly stored (seen) bigrams of `history` and their log-probs.
  const std::map<int, double> &SeenBigrams(int history) const {
    return seen_log_[history];
  }

  // Distinct bigram types, <s> and </s> included.
  size_t NumBigrams() const;
  long NumTrainingTokens() const { return num_tokens_; }
  // Empty for models read from ARPA files.
  const std::vector<HistoryStats> &Counts() const { return counts_; }

  // ARPA text: \data\ header, \1-grams: with log10 back-off weights,
  // \2-grams:, \end\. Emission order is sorted and deterministic.
  void WriteArpa(std::ostream &os) const;
  void ReadArpa(std::istream &is);

 private:
  friend BigramLM TrainBigram(const std::vector<Sentence> &sentences);

  void BuildIndex();

  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int> index_;
  int end_id_ = -1;
  long num_tokens_ = 0;
  std::vector<double> unigram_log_;          // [word]
  std::vector<double> backoff_log_;          // [history], size V+1
  std::vector<std::map<int, double>> seen_log_;  // [history]
  std::vector<HistoryStats> counts_;         // [history]
};

// Words are expected to be normalized already. Throws on an empty corpus or
// empty sentence, or if a sentence uses the reserved <s>/</s> tokens.
BigramLM TrainBigram(const std::vector<Sentence> &sentences);

struct PerplexityResult {
  double ppl = 0.0;
  long num_events = 0;  // words + one </s> per sentence
  double total_log_prob = 0.0;
};

// Closed vocabulary: any out-of-vocabulary word is a hard error naming it.
PerplexityResult ComputePerplexity(const BigramLM &lm,
                                   const std::vector<Sentence> &sentences);

// One sentence per line, whitespace-tokenized, words normalized; blank lines
// are skipped.
std::vector<Sentence> ReadSentences(std::istream &is);
std::vector<Sentence> ReadSentences(const std::string &path);

void WriteArpaFile(const BigramLM &lm, const std::string &path);
BigramLM ReadArpaFile(const std::string &path);

}  // namespace xlasr

#endif  // XLASR_LM_BIGRAM_LM_H_
