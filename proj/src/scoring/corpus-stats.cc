// scoring/corpus-stats.cc

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

#include "scoring/corpus-stats.h"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <set>
#include <tuple>

namespace xlasr {

namespace {

std::string GroupName(const UtteranceRecord &r) {
  return std::string(r.IsNative() ? "native " : "non-native ") + SplitName(r.split);
}

int GroupRank(const std::string &group) {
  static const char *kOrder[] = {"native train", "native eval", "non-native ada",
                                 "non-native eval"};
  for (int i = 0; i < 4; ++i)
    if (group == kOrder[i]) return i;
  return 4;
}

}  // namespace

std::vector<CorpusStatsRow> ComputeCorpusStats(
    const CorpusManifest &manifest, const std::map<std::string, long> &num_frames,
    double frame_shift_sec) {
  struct Acc {
    std::set<std::string> speakers, words;
    CorpusStatsRow row;
  };
  using Key = std::tuple<int, std::string, std::string, std::string>;
  std::map<Key, Acc> acc;
  for (const auto &r : manifest.Records()) {
    std::string group = GroupName(r);
    Acc &a = acc[{GroupRank(group), group, r.mother_language, r.spoken_language}];
    a.row.group = group;
    a.row.mother_language = r.mother_language;
    a.row.spoken_language = r.spoken_language;
    a.speakers.insert(r.speaker_id);
    a.words.insert(r.transcript.begin(), r.transcript.end());
    a.row.running_words += static_cast<long>(r.transcript.size());
    ++a.row.utterances;
    auto it = num_frames.find(r.utt_id);
    if (it != num_frames.end()) a.row.duration_sec += it->second * frame_shift_sec;
  }
  std::vector<CorpusStatsRow> rows;
  for (auto &[key, a] : acc) {
    a.row.speakers = static_cast<long>(a.speakers.size());
    a.row.lexicon_size = static_cast<long>(a.words.size());
    rows.push_back(a.row);
  }
  return rows;
}

std::string FormatDuration(double seconds) {
  long s = std::lround(seconds);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02ld:%02ld:%02ld", s / 3600, (s / 60) % 60, s % 60);
  return buf;
}

void WriteCorpusStats(const std::vector<CorpusStatsRow> &rows, std::ostream &os) {
  std::string group;
  os << std::setw(9) << "speakers" << std::setw(5) << "L1" << std::setw(5) << "L2"
     << std::setw(11) << "duration" << std::setw(9) << "words" << std::setw(9)
     << "lexicon" << '\n';
  for (const auto &r : rows) {
    if (r.group != group) {
      group = r.group;
      os << "# " << group << '\n';
    }
    os << std::setw(9) << r.speakers << std::setw(5) << r.mother_language
       << std::setw(5) << r.spoken_language << std::setw(11)
       << FormatDuration(r.duration_sec) << std::setw(9) << r.running_words
       << std::setw(9) << r.lexicon_size << '\n';
  }
}

}  // namespace xlasr
