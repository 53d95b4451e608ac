// scoring/wer.cc

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

#include "scoring/wer.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "base/text-normalize.h"
#include "base/xlasr-common.h"
#include "json.hpp"

namespace xlasr {

double EditCounts::Wer() const {
  if (ref_words == 0) return Errors() == 0 ? 0.0 : static_cast<double>(Errors());
  return static_cast<double>(Errors()) / ref_words;
}

EditCounts &EditCounts::operator+=(const EditCounts &o) {
  ref_words += o.ref_words;
  substitutions += o.substitutions;
  deletions += o.deletions;
  insertions += o.insertions;
  return *this;
}

namespace {

std::vector<std::vector<long>> EditTable(const std::vector<std::string> &ref,
                                         const std::vector<std::string> &hyp) {
  const size_t n = ref.size(), m = hyp.size();
  std::vector<std::vector<long>> d(n + 1, std::vector<long>(m + 1, 0));
  for (size_t i = 0; i <= n; ++i) d[i][0] = static_cast<long>(i);
  for (size_t j = 0; j <= m; ++j) d[0][j] = static_cast<long>(j);
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = 1; j <= m; ++j) {
      long diag = d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      d[i][j] = std::min({diag, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  return d;
}

}  // namespace

std::vector<AlignedPair> AlignWords(const std::vector<std::string> &ref,
                                    const std::vector<std::string> &hyp) {
  auto d = EditTable(ref, hyp);
  std::vector<AlignedPair> out;
  size_t i = ref.size(), j = hyp.size();
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      bool same = ref[i - 1] == hyp[j - 1];
      if (d[i][j] == d[i - 1][j - 1] + (same ? 0 : 1)) {
        out.push_back({same ? EditOp::kMatch : EditOp::kSubstitution, ref[i - 1],
                       hyp[j - 1]});
        --i, --j;
        continue;
      }
    }
    if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      out.push_back({EditOp::kDeletion, ref[i - 1], ""});
      --i;
    } else {
      out.push_back({EditOp::kInsertion, "", hyp[j - 1]});
      --j;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

EditCounts CountEdits(const std::vector<AlignedPair> &alignment) {
  EditCounts c;
  for (const auto &p : alignment) {
    switch (p.op) {
      case EditOp::kMatch: ++c.ref_words; break;
      case EditOp::kSubstitution: ++c.ref_words; ++c.substitutions; break;
      case EditOp::kDeletion: ++c.ref_words; ++c.deletions; break;
      case EditOp::kInsertion: ++c.insertions; break;
    }
  }
  return c;
}

long EditDistance(const std::vector<std::string> &ref,
                  const std::vector<std::string> &hyp) {
  return EditTable(ref, hyp)[ref.size()][hyp.size()];
}

WerReport ComputeWer(const TranscriptTable &refs, const TranscriptTable &hyps) {
  auto normalize = [](const std::vector<std::string> &words) {
    std::vector<std::string> out;
    out.reserve(words.size());
    for (const auto &w : words) out.push_back(NormalizeWord(w));
    return out;
  };
  std::map<std::string, std::vector<std::string>> hyp_map;
  for (const auto &[id, words] : hyps)
    if (!hyp_map.emplace(id, normalize(words)).second)
      XLASR_ERR << "duplicate hypothesis utterance id '" << id << "'";
  std::set<std::string> seen;
  WerReport report;
  for (const auto &[id, words] : refs) {
    if (!seen.insert(id).second)
      XLASR_ERR << "duplicate reference utterance id '" << id << "'";
    std::vector<std::string> hyp;
    auto it = hyp_map.find(id);
    if (it == hyp_map.end())
      XLASR_WARN << "no hypothesis for utterance " << id << "; scoring as empty";
    else
      hyp = it->second;
    UtteranceScore u;
    u.utt_id = id;
    u.alignment = AlignWords(normalize(words), hyp);
    u.counts = CountEdits(u.alignment);
    report.total += u.counts;
    report.utterances.push_back(std::move(u));
  }
  for (const auto &kv : hyp_map)
    if (!seen.count(kv.first))
      XLASR_WARN << "hypothesis for unknown utterance " << kv.first << " ignored";
  return report;
}

void WerReport::WriteText(std::ostream &os) const {
  size_t w = 8;
  for (const auto &u : utterances) w = std::max(w, u.utt_id.size());
  os << std::left << std::setw(static_cast<int>(w)) << "utt_id" << std::right
     << std::setw(7) << "N" << std::setw(6) << "S" << std::setw(6) << "D"
     << std::setw(6) << "I" << std::setw(9) << "WER%" << '\n';
  auto row = [&](const std::string &name, const EditCounts &c) {
    os << std::left << std::setw(static_cast<int>(w)) << name << std::right
       << std::setw(7) << c.ref_words << std::setw(6) << c.substitutions
       << std::setw(6) << c.deletions << std::setw(6) << c.insertions
       << std::setw(9) << std::fixed << std::setprecision(2) << 100.0 * c.Wer()
       << '\n';
  };
  for (const auto &u : utterances) row(u.utt_id, u.counts);
  row("TOTAL", total);
}

std::string WerReport::ToJson() const {
  nlohmann::ordered_json j;
  auto counts = [](const EditCounts &c) {
    nlohmann::ordered_json o;
    o["n"] = c.ref_words;
    o["sub"] = c.substitutions;
    o["del"] = c.deletions;
    o["ins"] = c.insertions;
    o["wer"] = c.Wer();
    return o;
  };
  j["total"] = counts(total);
  j["utterances"] = nlohmann::ordered_json::array();
  for (const auto &u : utterances) {
    auto o = counts(u.counts);
    o["utt_id"] = u.utt_id;
    j["utterances"].push_back(o);
  }
  return j.dump(2);
}

TranscriptTable ReadTranscriptTable(std::istream &is) {
  TranscriptTable out;
  std::string line;
  while (std::getline(is, line)) {
    if (Trim(line).empty()) continue;
    size_t tab = line.find('\t');
    std::string id, rest;
    if (tab == std::string::npos) {
      auto f = SplitWhitespace(line);
      id = f[0];
      rest = line.substr(line.find(id) + id.size());
    } else {
      id = Trim(line.substr(0, tab));
      rest = line.substr(tab + 1);
    }
    out.emplace_back(id, SplitWhitespace(rest));
  }
  return out;
}

TranscriptTable ReadTranscriptTable(const std::string &path) {
  std::ifstream is(path);
  if (!is) XLASR_ERR << "cannot open " << path;
  return ReadTranscriptTable(is);
}

void WriteTranscriptTable(const TranscriptTable &table, std::ostream &os) {
  for (const auto &[id, words] : table) os << id << '\t' << JoinStrings(words, " ") << '\n';
}

}  // namespace xlasr
