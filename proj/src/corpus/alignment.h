// corpus/alignment.h

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

#ifndef XLASR_CORPUS_ALIGNMENT_H_
#define XLASR_CORPUS_ALIGNMENT_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace xlasr {

// Frames [start, end) spoken as `phone`.
struct PhoneSegment {
  std::string phone;
  int start = 0;
  int end = 0;
  bool operator==(const PhoneSegment &) const = default;
};

// State-level segmentation of one utterance. `frame_states` holds a state id
// (see StateMap) per frame; `segments` tile [0, num_frames) in order.
struct Alignment {
  std::vector<int> frame_states;
  std::vector<PhoneSegment> segments;

  int NumFrames() const { return static_cast<int>(frame_states.size()); }
  bool operator==(const Alignment &) const = default;
};

// Phone segments plus the HMM sub-state (0, 1, 2) of every frame; the form
// synthetic data carries before a state inventory is chosen.
struct PhoneStateLabels {
  std::vector<PhoneSegment> segments;
  std::vector<int> hmm_states;
};

// "utt_id phone start end" lines (end exclusive).
void WritePhoneSegments(const std::string &utt_id,
                        const std::vector<PhoneSegment> &segments, std::ostream &os);
// "utt_id s0 s1 s2 ..." (one line per utterance).
void WriteStateAlignment(const std::string &utt_id, const std::vector<int> &states,
                         std::ostream &os);
std::map<std::string, std::vector<int>> ReadStateAlignments(std::istream &is);
std::map<std::string, std::vector<int>> ReadStateAlignments(const std::string &path);

}  // namespace xlasr

#endif  // XLASR_CORPUS_ALIGNMENT_H_
