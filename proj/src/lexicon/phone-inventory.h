// lexicon/phone-inventory.h

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

#ifndef XLASR_LEXICON_PHONE_INVENTORY_H_
#define XLASR_LEXICON_PHONE_INVENTORY_H_

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace xlasr {

// ASCII, IPA-like phone symbol such as "tS" or "O\"9". Case-sensitive.
using PhoneSymbol = std::string;
using LanguageCode = std::string;
using LanguageSet = std::set<LanguageCode>;

// Throws unless `symbol` is non-empty printable ASCII without whitespace.
void ValidatePhoneSymbol(const std::string &symbol);

/// A set of phones together with the languages that use each of them.
/// Per-language inventories have a single language in every membership set;
/// merged inventories record the union.
class PhoneInventory {
 public:
  PhoneInventory() = default;

  // Adds `phone` to `language`; a phone may be added for several languages.
  void Add(const PhoneSymbol &phone, const LanguageCode &language);

  bool Contains(const PhoneSymbol &phone) const {
    return membership_.count(phone) != 0;
  }
  // Languages using `phone`; throws if the phone is unknown.
  const LanguageSet &Languages(const PhoneSymbol &phone) const;
  bool InLanguage(const PhoneSymbol &phone, const LanguageCode &language) const;

  size_t NumPhones() const { return membership_.size(); }
  std::vector<PhoneSymbol> Phones() const;  // sorted
  LanguageSet AllLanguages() const;
  const std::map<PhoneSymbol, LanguageSet> &Membership() const {
    return membership_;
  }

  // The sub-inventory of phones used by `language`, with membership
  // restricted to that language.
  PhoneInventory Restrict(const LanguageCode &language) const;

  bool operator==(const PhoneInventory &other) const = default;

  // Text format: one line per phone, "symbol<TAB>lang1,lang2,...".
  // Blank lines and lines starting with '#' are ignored.
  void Read(std::istream &is);
  void Write(std::ostream &os) const;

 private:
  std::map<PhoneSymbol, LanguageSet> membership_;
};

PhoneInventory ReadPhoneInventory(const std::string &path);
void WritePhoneInventory(const PhoneInventory &inventory, const std::string &path);

// Union of symbols and of membership sets.
PhoneInventory MergeInventories(const std::vector<PhoneInventory> &inventories);

/// Partition of a merged inventory by membership subset.
struct OverlapStats {
  size_t total = 0;
  std::map<LanguageSet, size_t> subset_counts;

  // Number of phones used by `language`, summed over the subsets containing it.
  size_t LanguageTotal(const LanguageCode &language) const;
  // Subset counts in order of decreasing subset size, then lexicographic.
  std::string ToString() const;
};

OverlapStats ComputeOverlapStats(const PhoneInventory &merged);

// The shared IPA-like phone table for Italian ("it"), German ("de") and
// English ("en"): 67 phones with their per-language membership.
const PhoneInventory &ReferenceInventory();

bool IsVowelSymbol(const PhoneSymbol &phone);

}  // namespace xlasr

#endif  // XLASR_LEXICON_PHONE_INVENTORY_H_
