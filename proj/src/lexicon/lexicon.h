// lexicon/lexicon.h

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

#ifndef XLASR_LEXICON_LEXICON_H_
#define XLASR_LEXICON_LEXICON_H_

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lexicon/phone-inventory.h"

namespace xlasr {

using Pronunciation = std::vector<PhoneSymbol>;

/// Pronunciation lexicon of one language. Words are keyed by their
/// normalized form (NFC + case folding), so lookups are case-insensitive.
/// A word may have several pronunciations; all of them are kept in
/// insertion order.
class Lexicon {
 public:
  explicit Lexicon(LanguageCode language = "") : language_(std::move(language)) {}

  const LanguageCode &Language() const { return language_; }

  // Returns false (and stores nothing) if the identical pronunciation is
  // already present for this word. Throws on an empty pronunciation.
  bool AddPronunciation(const std::string &word, const Pronunciation &pron);

  // nullptr if the word is unknown.
  const std::vector<Pronunciation> *Lookup(const std::string &word) const;
  bool Contains(const std::string &word) const { return Lookup(word) != nullptr; }

  size_t NumWords() const { return entries_.size(); }
  const std::map<std::string, std::vector<Pronunciation>> &Entries() const {
    return entries_;
  }
  std::set<PhoneSymbol> PhonesUsed() const;

  // Writes "WORD ph1 ph2 ..." lines, one per pronunciation.
  void Write(std::ostream &os) const;

 private:
  LanguageCode language_;
  std::map<std::string, std::vector<Pronunciation>> entries_;
};

// Reads a lexicon in "WORD ph1 ph2 ..." format ('#' starts a comment line).
// Every phone must belong to `language` in `inventory`; errors name the word,
// the offending symbol and the line. Duplicate identical entries produce a
// warning and are dropped.
Lexicon ReadLexicon(std::istream &is, const LanguageCode &language,
                    const PhoneInventory &inventory,
                    const std::string &source_name = "<stream>");
Lexicon LoadLexicon(const std::string &path, const LanguageCode &language,
                    const PhoneInventory &inventory);
void WriteLexicon(const Lexicon &lexicon, const std::string &path);

// Collapses immediately repeated consonants (geminates) to a single phone.
// Repeated vowels are kept.
Pronunciation NormalizeItalian(const Pronunciation &pron);

}  // namespace xlasr

#endif  // XLASR_LEXICON_LEXICON_H_
