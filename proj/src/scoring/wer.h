// scoring/wer.h

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

#ifndef XLASR_SCORING_WER_H_
#define XLASR_SCORING_WER_H_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace xlasr {

struct EditCounts {
  long ref_words = 0;
  long substitutions = 0;
  long deletions = 0;
  long insertions = 0;

  long Errors() const { return substitutions + deletions + insertions; }
  // (S + D + I) / N; 0 for an empty reference with no insertions.
  double Wer() const;
  EditCounts &operator+=(const EditCounts &o);
  bool operator==(const EditCounts &o) const = default;
};

enum class EditOp { kMatch, kSubstitution, kDeletion, kInsertion };

struct AlignedPair {
  EditOp op;
  std::string ref;  // empty for insertions
  std::string hyp;  // empty for deletions
};

// Unit-cost Levenshtein alignment. On the traceback, a diagonal step
// (match or substitution) wins ties against deletion, and deletion against
// insertion, so equal-cost alignments use substitutions rather than
// insertion/deletion pairs.
std::vector<AlignedPair> AlignWords(const std::vector<std::string> &ref,
                                    const std::vector<std::string> &hyp);
EditCounts CountEdits(const std::vector<AlignedPair> &alignment);
long EditDistance(const std::vector<std::string> &ref,
                  const std::vector<std::string> &hyp);

using TranscriptTable = std::vector<std::pair<std::string, std::vector<std::string>>>;

struct UtteranceScore {
  std::string utt_id;
  EditCounts counts;
  std::vector<AlignedPair> alignment;
};

struct WerReport {
  EditCounts total;
  std::vector<UtteranceScore> utterances;  // in reference order

  double Wer() const { return total.Wer(); }
  // Per-utterance table followed by the corpus summary line.
  void WriteText(std::ostream &os) const;
  std::string ToJson() const;
};

// Words are compared after normalization (NFC + case folding). Every
// reference utterance should have a hypothesis; a missing one is scored as
// empty with a warning. Duplicate utterance ids on either side are an error.
// Hypotheses for ids absent from the references are ignored with a warning.
WerReport ComputeWer(const TranscriptTable &refs, const TranscriptTable &hyps);

// "utt_id<TAB>word1 word2 ..." lines; the words part may be empty.
TranscriptTable ReadTranscriptTable(std::istream &is);
TranscriptTable ReadTranscriptTable(const std::string &path);
void WriteTranscriptTable(const TranscriptTable &table, std::ostream &os);

}  // namespace xlasr

#endif  // XLASR_SCORING_WER_H_
