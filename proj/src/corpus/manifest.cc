// corpus/manifest.cc

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

#include "corpus/manifest.h"

#include <fstream>
#include <map>
#include <unordered_set>

#include "base/text-normalize.h"
#include "base/xlasr-common.h"
#include "json.hpp"

namespace xlasr {

std::string SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kAda: return "ada";
    case Split::kEval: return "eval";
  }
  return "?";
}

Split ParseSplit(const std::string &name) {
  if (name == "train") return Split::kTrain;
  if (name == "ada") return Split::kAda;
  if (name == "eval") return Split::kEval;
  XLASR_ERR << "unknown split '" << name << "' (expected train, ada or eval)";
}

CorpusManifest::CorpusManifest(std::vector<UtteranceRecord> records)
    : records_(std::move(records)) {}

void CorpusManifest::Add(UtteranceRecord record) {
  records_.push_back(std::move(record));
}

void CorpusManifest::Validate() const {
  std::unordered_set<std::string> ids;
  std::map<std::tuple<std::string, std::string, std::string>, Split> speaker_split;
  for (const auto &r : records_) {
    if (r.utt_id.empty()) XLASR_ERR << "manifest record with empty utt_id";
    if (!ids.insert(r.utt_id).second)
      XLASR_ERR << "duplicate utterance id '" << r.utt_id << "'";
    if (r.mother_language.empty() || r.spoken_language.empty())
      XLASR_ERR << "utterance " << r.utt_id << " lacks L1/L2";
    auto key = std::make_tuple(r.speaker_id, r.mother_language, r.spoken_language);
    auto [it, inserted] = speaker_split.emplace(key, r.split);
    if (!inserted && it->second != r.split)
      XLASR_ERR << "speaker '" << r.speaker_id << "' appears in both "
                << SplitName(it->second) << " and " << SplitName(r.split) << " for ("
                << r.mother_language << ", " << r.spoken_language << ")";
  }
}

CorpusManifest CorpusManifest::Select(
    const std::function<bool(const UtteranceRecord &)> &pred) const {
  CorpusManifest out;
  for (const auto &r : records_)
    if (pred(r)) out.records_.push_back(r);
  return out;
}

std::set<LanguagePair> CorpusManifest::PopulatedPairs(Split split) const {
  std::set<LanguagePair> out;
  for (const auto &r : records_)
    if (r.split == split) out.emplace(r.mother_language, r.spoken_language);
  return out;
}

std::set<std::string> CorpusManifest::SpokenLanguages() const {
  std::set<std::string> out;
  for (const auto &r : records_) out.insert(r.spoken_language);
  return out;
}

const UtteranceRecord *CorpusManifest::Find(const std::string &utt_id) const {
  for (const auto &r : records_)
    if (r.utt_id == utt_id) return &r;
  return nullptr;
}

void CorpusManifest::Read(std::istream &is) {
  records_.clear();
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      UtteranceRecord r;
      r.utt_id = j.at("utt_id").get<std::string>();
      r.speaker_id = j.at("speaker").get<std::string>();
      r.mother_language = j.at("l1").get<std::string>();
      r.spoken_language = j.at("l2").get<std::string>();
      r.split = ParseSplit(j.at("split").get<std::string>());
      for (const auto &w : SplitWhitespace(j.at("transcript").get<std::string>()))
        r.transcript.push_back(NormalizeWord(w));
      r.source = j.value("source", std::string("synth"));
      records_.push_back(std::move(r));
    } catch (const nlohmann::json::exception &e) {
      XLASR_ERR << "manifest line " << line_no << ": " << e.what();
    } catch (const Error &e) {
      XLASR_ERR << "manifest line " << line_no << ": " << e.what();
    }
  }
}

void CorpusManifest::Write(std::ostream &os) const {
  for (const auto &r : records_) {
    nlohmann::ordered_json j;
    j["utt_id"] = r.utt_id;
    j["speaker"] = r.speaker_id;
    j["l1"] = r.mother_language;
    j["l2"] = r.spoken_language;
    j["split"] = SplitName(r.split);
    j["transcript"] = JoinStrings(r.transcript, " ");
    j["source"] = r.source;
    os << j.dump() << '\n';
  }
}

CorpusManifest ReadManifest(const std::string &path) {
  std::ifstream is(path);
  if (!is) XLASR_ERR << "cannot open manifest " << path;
  CorpusManifest m;
  try {
    m.Read(is);
  } catch (const Error &e) {
    XLASR_ERR << path << ": " << e.what();
  }
  return m;
}

void WriteManifest(const CorpusManifest &manifest, const std::string &path) {
  std::ofstream os(path);
  if (!os) XLASR_ERR << "cannot write manifest " << path;
  manifest.Write(os);
}

}  // namespace xlasr
