// am/state-map.cc

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

#include "am/state-map.h"

#include <algorithm>

#include "base/xlasr-common.h"

namespace xlasr {

StateMap::StateMap(std::vector<PhoneSymbol> phones) {
  if (phones.empty()) XLASR_ERR << "cannot build a state map from an empty inventory";
  std::sort(phones.begin(), phones.end());
  phones.erase(std::unique(phones.begin(), phones.end()), phones.end());
  for (const auto &p : phones)
    if (p == kSilence) XLASR_ERR << "phone symbol '" << kSilence << "' is reserved";
  phones.push_back(kSilence);
  phones_ = std::move(phones);
  for (size_t i = 0; i < phones_.size(); ++i) index_[phones_[i]] = static_cast<int>(i);
}

int StateMap::PhoneIndex(const PhoneSymbol &phone) const {
  auto it = index_.find(phone);
  if (it == index_.end()) XLASR_ERR << "phone '" << phone << "' not in state map";
  return it->second;
}

Alignment StateMap::ToAlignment(const PhoneStateLabels &labels) const {
  Alignment ali;
  ali.segments = labels.segments;
  ali.frame_states.resize(labels.hmm_states.size());
  for (const auto &seg : labels.segments) {
    int base = PhoneIndex(seg.phone) * kStatesPerPhone;
    for (int t = seg.start; t < seg.end; ++t)
      ali.frame_states[t] = base + labels.hmm_states[t];
  }
  return ali;
}

std::vector<PhoneSegment> StateMap::SegmentsOf(const std::vector<int> &frame_states) const {
  std::vector<PhoneSegment> out;
  for (size_t t = 0; t < frame_states.size(); ++t) {
    int s = frame_states[t];
    if (s < 0 || s >= NumStates()) XLASR_ERR << "state id " << s << " out of range";
    const PhoneSymbol &p = PhoneOfState(s);
    // A new phone starts on a phone change or when the state sequence restarts.
    bool restart = t > 0 && HmmStateOf(s) < HmmStateOf(frame_states[t - 1]);
    if (out.empty() || out.back().phone != p || restart)
      out.push_back({p, static_cast<int>(t), static_cast<int>(t) + 1});
    else
      out.back().end = static_cast<int>(t) + 1;
  }
  return out;
}

StateMap BuildStateMap(const PhoneInventory &inventory) {
  return StateMap(inventory.Phones());
}

}  // namespace xlasr
