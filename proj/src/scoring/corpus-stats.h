// scoring/corpus-stats.h

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

#ifndef XLASR_SCORING_CORPUS_STATS_H_
#define XLASR_SCORING_CORPUS_STATS_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "corpus/manifest.h"

namespace xlasr {

struct CorpusStatsRow {
  std::string group;  // e.g. "native train", "non-native eval"
  std::string mother_language;
  std::string spoken_language;
  long speakers = 0;
  double duration_sec = 0.0;
  long running_words = 0;
  long lexicon_size = 0;  // distinct words
  long utterances = 0;
};

// Rows grouped like the usual corpus description tables: native train,
// native eval, non-native ada, non-native eval, then any other combination.
// Durations come from `num_frames` (utt_id -> frames) times `frame_shift_sec`;
// utterances missing from the map contribute zero duration.
std::vector<CorpusStatsRow> ComputeCorpusStats(
    const CorpusManifest &manifest,
    const std::map<std::string, long> &num_frames = {},
    double frame_shift_sec = 0.01);

std::string FormatDuration(double seconds);  // hh:mm:ss
void WriteCorpusStats(const std::vector<CorpusStatsRow> &rows, std::ostream &os);

}  // namespace xlasr

#endif  // XLASR_SCORING_CORPUS_STATS_H_
