// am/state-map.h

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

#ifndef XLASR_AM_STATE_MAP_H_
#define XLASR_AM_STATE_MAP_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "corpus/alignment.h"
#include "lexicon/phone-inventory.h"

namespace xlasr {

inline constexpr int kStatesPerPhone = 3;

/// Monophone HMM state inventory: three left-to-right states per phone,
/// phones in sorted (byte-wise) order, followed by the three silence states.
/// State id = 3 * phone_index + hmm_state.
class StateMap {
 public:
  static constexpr const char *kSilence = "sil";

  StateMap() = default;
  // `phones` must be non-empty; duplicates are merged. "sil" is reserved.
  explicit StateMap(std::vector<PhoneSymbol> phones);

  int NumStates() const { return static_cast<int>(phones_.size()) * kStatesPerPhone; }
  // Includes silence.
  int NumPhones() const { return static_cast<int>(phones_.size()); }
  const std::vector<PhoneSymbol> &Phones() const { return phones_; }

  bool HasPhone(const PhoneSymbol &phone) const { return index_.count(phone) != 0; }
  int PhoneIndex(const PhoneSymbol &phone) const;
  int StateId(const PhoneSymbol &phone, int hmm_state) const {
    return PhoneIndex(phone) * kStatesPerPhone + hmm_state;
  }
  const PhoneSymbol &PhoneOfState(int state_id) const {
    return phones_[state_id / kStatesPerPhone];
  }
  static int HmmStateOf(int state_id) { return state_id % kStatesPerPhone; }

  Alignment ToAlignment(const PhoneStateLabels &labels) const;
  // Rebuilds phone segments from per-frame state ids.
  std::vector<PhoneSegment> SegmentsOf(const std::vector<int> &frame_states) const;

  bool operator==(const StateMap &o) const { return phones_ == o.phones_; }

 private:
  std::vector<PhoneSymbol> phones_;
  std::map<PhoneSymbol, int> index_;
};

StateMap BuildStateMap(const PhoneInventory &inventory);

}  // namespace xlasr

#endif  // XLASR_AM_STATE_MAP_H_
