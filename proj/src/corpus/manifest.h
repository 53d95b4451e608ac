// corpus/manifest.h

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

#ifndef XLASR_CORPUS_MANIFEST_H_
#define XLASR_CORPUS_MANIFEST_H_

#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace xlasr {

enum class Split { kTrain, kAda, kEval };

std::string SplitName(Split split);
Split ParseSplit(const std::string &name);

struct UtteranceRecord {
  std::string utt_id;
  std::string speaker_id;
  std::string mother_language;  // L1
  std::string spoken_language;  // L2
  Split split = Split::kTrain;
  std::vector<std::string> transcript;  // normalized words
  // "synth" for generated features, otherwise a path to a 16-bit PCM WAV.
  std::string source = "synth";

  bool IsNative() const { return mother_language == spoken_language; }
  bool IsSynthetic() const { return source == "synth"; }
};

using LanguagePair = std::pair<std::string, std::string>;  // (L1, L2)

/// Utterance list of a corpus. Stored as JSON lines, one object per
/// utterance with keys utt_id, speaker, l1, l2, split, transcript, source.
class CorpusManifest {
 public:
  CorpusManifest() = default;
  explicit CorpusManifest(std::vector<UtteranceRecord> records);

  const std::vector<UtteranceRecord> &Records() const { return records_; }
  bool Empty() const { return records_.empty(); }
  size_t Size() const { return records_.size(); }
  void Add(UtteranceRecord record);

  // Throws on duplicate utterance ids or on a speaker appearing in more than
  // one split for the same (L1, L2) pair.
  void Validate() const;

  CorpusManifest Select(
      const std::function<bool(const UtteranceRecord &)> &pred) const;
  // (L1, L2) pairs that have at least one record in `split`.
  std::set<LanguagePair> PopulatedPairs(Split split) const;
  std::set<std::string> SpokenLanguages() const;
  const UtteranceRecord *Find(const std::string &utt_id) const;

  void Read(std::istream &is);
  void Write(std::ostream &os) const;

 private:
  std::vector<UtteranceRecord> records_;
};

CorpusManifest ReadManifest(const std::string &path);
void WriteManifest(const CorpusManifest &manifest, const std::string &path);

}  // namespace xlasr

#endif  // XLASR_CORPUS_MANIFEST_H_
