// lexicon/phone-inventory.cc

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

#include "lexicon/phone-inventory.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "base/xlasr-common.h"

namespace xlasr {

void ValidatePhoneSymbol(const std::string &symbol) {
  if (symbol.empty()) XLASR_ERR << "empty phone symbol";
  for (unsigned char c : symbol) {
    if (c <= 0x20 || c >= 0x7f)
      XLASR_ERR << "phone symbol '" << symbol
                << "' must be printable ASCII without whitespace";
  }
}

void PhoneInventory::Add(const PhoneSymbol &phone, const LanguageCode &language) {
  ValidatePhoneSymbol(phone);
  if (language.empty()) XLASR_ERR << "empty language code for phone " << phone;
  membership_[phone].insert(language);
}

const LanguageSet &PhoneInventory::Languages(const PhoneSymbol &phone) const {
  auto it = membership_.find(phone);
  if (it == membership_.end()) XLASR_ERR << "unknown phone '" << phone << "'";
  return it->second;
}

bool PhoneInventory::InLanguage(const PhoneSymbol &phone,
                                const LanguageCode &language) const {
  auto it = membership_.find(phone);
  return it != membership_.end() && it->second.count(language) != 0;
}

std::vector<PhoneSymbol> PhoneInventory::Phones() const {
  std::vector<PhoneSymbol> out;
  out.reserve(membership_.size());
  for (const auto &kv : membership_) out.push_back(kv.first);
  return out;
}

LanguageSet PhoneInventory::AllLanguages() const {
  LanguageSet out;
  for (const auto &kv : membership_) out.insert(kv.second.begin(), kv.second.end());
  return out;
}

PhoneInventory PhoneInventory::Restrict(const LanguageCode &language) const {
  PhoneInventory out;
  for (const auto &kv : membership_)
    if (kv.second.count(language)) out.Add(kv.first, language);
  return out;
}

void PhoneInventory::Read(std::istream &is) {
  membership_.clear();
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::vector<std::string> fields = SplitWhitespace(trimmed);
    if (fields.size() != 2)
      XLASR_ERR << "inventory line " << line_no
                << ": expected 'symbol<TAB>lang1,lang2,...', got '" << line << "'";
    for (const std::string &lang : SplitOn(fields[1], ',')) {
      if (lang.empty())
        XLASR_ERR << "inventory line " << line_no << ": empty language code";
      Add(fields[0], lang);
    }
  }
}

void PhoneInventory::Write(std::ostream &os) const {
  for (const auto &kv : membership_) {
    os << kv.first << '\t';
    bool first = true;
    for (const auto &lang : kv.second) {
      if (!first) os << ',';
      os << lang;
      first = false;
    }
    os << '\n';
  }
}

PhoneInventory ReadPhoneInventory(const std::string &path) {
  std::ifstream is(path);
  if (!is) XLASR_ERR << "cannot open inventory " << path;
  PhoneInventory inv;
  try {
    inv.Read(is);
  } catch (const Error &e) {
    XLASR_ERR << path << ": " << e.what();
  }
  return inv;
}

void WritePhoneInventory(const PhoneInventory &inventory, const std::string &path) {
  std::ofstream os(path);
  if (!os) XLASR_ERR << "cannot write inventory " << path;
  inventory.Write(os);
}

PhoneInventory MergeInventories(const std::vector<PhoneInventory> &inventories) {
  PhoneInventory merged;
  for (const auto &inv : inventories)
    for (const auto &kv : inv.Membership())
      for (const auto &lang : kv.second) merged.Add(kv.first, lang);
  return merged;
}

size_t OverlapStats::LanguageTotal(const LanguageCode &language) const {
  size_t n = 0;
  for (const auto &kv : subset_counts)
    if (kv.first.count(language)) n += kv.second;
  return n;
}

std::string OverlapStats::ToString() const {
  std::vector<std::pair<LanguageSet, size_t>> rows(subset_counts.begin(),
                                                   subset_counts.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) {
    return a.first.size() > b.first.size();
  });
  std::ostringstream os;
  os << "total\t" << total << '\n';
  for (const auto &[subset, count] : rows) {
    std::vector<std::string> langs(subset.begin(), subset.end());
    os << JoinStrings(langs, "+") << '\t' << count << '\n';
  }
  return os.str();
}

OverlapStats ComputeOverlapStats(const PhoneInventory &merged) {
  OverlapStats stats;
  stats.total = merged.NumPhones();
  for (const auto &kv : merged.Membership()) ++stats.subset_counts[kv.second];
  return stats;
}

namespace {

struct ReferenceRow {
  const char *phone;
  bool it, de, en;
};

// Reference three-language phone table.
constexpr ReferenceRow kReferenceRows[] = {
    {"A\"", 0, 1, 0},  {"AA", 0, 0, 1},   {"AE", 0, 0, 1},   {"AH", 0, 0, 1},
    {"AI", 0, 1, 1},   {"AU", 0, 1, 1},   {"AX", 0, 0, 1},   {"C", 0, 1, 0},
    {"DH", 0, 0, 1},   {"E@", 0, 1, 0},   {"EA", 0, 0, 1},   {"ER6", 0, 1, 0},
    {"ER", 0, 0, 1},   {"EY", 0, 0, 1},   {"E", 0, 1, 1},    {"IA", 0, 0, 1},
    {"I", 0, 1, 1},    {"J", 1, 0, 0},    {"L", 1, 0, 0},    {"NG", 0, 1, 1},
    {"O\"2", 0, 1, 0}, {"O\"9", 0, 1, 0}, {"OH", 0, 0, 1},
    {"OW", 0, 0, 1},   {"OY", 0, 1, 1},   {"O", 0, 1, 1},    {"R", 0, 1, 0},
    {"S", 1, 1, 1},    {"TH", 0, 0, 1},   {"U\"", 0, 1, 0},  {"UA", 0, 0, 1},
    {"U", 0, 1, 1},    {"Z", 0, 0, 1},    {"a:", 0, 1, 0},   {"a", 1, 1, 0},
    {"b", 1, 1, 1},    {"dZ", 1, 1, 1},   {"d", 1, 1, 1},    {"dz", 1, 0, 0},
    {"e:", 0, 1, 0},   {"e", 1, 0, 0},    {"f", 1, 1, 1},    {"g", 1, 1, 1},
    {"h", 0, 1, 1},    {"i:", 0, 1, 0},   {"i", 1, 0, 0},
    {"j", 1, 1, 1},    {"k", 1, 1, 1},    {"l", 1, 1, 1},    {"m", 1, 1, 1},
    {"n", 1, 1, 1},    {"o:", 0, 1, 0},   {"o", 1, 0, 0},    {"p", 1, 1, 1},
    {"pf", 0, 1, 0},   {"r", 1, 1, 1},    {"s", 1, 1, 1},    {"tS", 1, 1, 1},
    {"t", 1, 1, 1},    {"ts", 1, 1, 0},   {"u\"", 0, 1, 0},  {"u:", 0, 1, 0},
    {"u", 1, 0, 1},    {"v", 1, 1, 1},    {"w", 1, 0, 1},    {"x", 0, 1, 0},
    {"z", 1, 1, 1},
};

}  // namespace

const PhoneInventory &ReferenceInventory() {
  static const PhoneInventory inventory = [] {
    PhoneInventory inv;
    for (const auto &row : kReferenceRows) {
      if (row.it) inv.Add(row.phone, "it");
      if (row.de) inv.Add(row.phone, "de");
      if (row.en) inv.Add(row.phone, "en");
    }
    return inv;
  }();
  return inventory;
}

bool IsVowelSymbol(const PhoneSymbol &phone) {
  static const std::set<PhoneSymbol> kVowels = {
      "A\"", "AA", "AE", "AH", "AI", "AU", "AX", "E@", "EA", "ER6", "ER",
      "EY",  "E",  "IA", "I",  "O\"2", "O\"9", "OH", "OW", "OY", "O", "U\"",
      "UA",  "U",  "a:", "a",  "e:", "e",  "i:", "i",  "o:", "o",  "u\"",
      "u:",  "u"};
  return kVowels.count(phone) != 0;
}

}  // namespace xlasr
