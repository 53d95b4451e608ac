// lexicon/lexicon.cc

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

#include "lexicon/lexicon.h"

#include <algorithm>
#include <fstream>

#include "base/text-normalize.h"
#include "base/xlasr-common.h"

namespace xlasr {

bool Lexicon::AddPronunciation(const std::string &word, const Pronunciation &pron) {
  if (pron.empty()) XLASR_ERR << "empty pronunciation for word '" << word << "'";
  std::string key = NormalizeWord(word);
  if (key.empty()) XLASR_ERR << "empty word";
  auto &prons = entries_[key];
  if (std::find(prons.begin(), prons.end(), pron) != prons.end()) return false;
  prons.push_back(pron);
  return true;
}

const std::vector<Pronunciation> *Lexicon::Lookup(const std::string &word) const {
  auto it = entries_.find(NormalizeWord(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::set<PhoneSymbol> Lexicon::PhonesUsed() const {
  std::set<PhoneSymbol> out;
  for (const auto &kv : entries_)
    for (const auto &pron : kv.second) out.insert(pron.begin(), pron.end());
  return out;
}

void Lexicon::Write(std::ostream &os) const {
  for (const auto &[word, prons] : entries_)
    for (const auto &pron : prons) os << word << ' ' << JoinStrings(pron, " ") << '\n';
}

Lexicon ReadLexicon(std::istream &is, const LanguageCode &language,
                    const PhoneInventory &inventory, const std::string &source_name) {
  Lexicon lex(language);
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::vector<std::string> fields = SplitWhitespace(trimmed);
    const std::string &word = fields[0];
    if (fields.size() < 2)
      XLASR_ERR << source_name << ":" << line_no << ": empty pronunciation for word '"
                << word << "'";
    Pronunciation pron(fields.begin() + 1, fields.end());
    for (const auto &ph : pron) {
      if (!inventory.InLanguage(ph, language))
        XLASR_ERR << source_name << ":" << line_no << ": word '" << word
                  << "' uses phone '" << ph << "' not in the " << language
                  << " inventory";
    }
    if (!lex.AddPronunciation(word, pron))
      XLASR_WARN << source_name << ":" << line_no << ": duplicate entry for '" << word
                 << "' ignored";
  }
  return lex;
}

Lexicon LoadLexicon(const std::string &path, const LanguageCode &language,
                    const PhoneInventory &inventory) {
  std::ifstream is(path);
  if (!is) XLASR_ERR << "cannot open lexicon " << path;
  return ReadLexicon(is, language, inventory, path);
}

void WriteLexicon(const Lexicon &lexicon, const std::string &path) {
  std::ofstream os(path);
  if (!os) XLASR_ERR << "cannot write lexicon " << path;
  lexicon.Write(os);
}

Pronunciation NormalizeItalian(const Pronunciation &pron) {
  Pronunciation out;
  out.reserve(pron.size());
  for (const auto &ph : pron) {
    if (!out.empty() && out.back() == ph && !IsVowelSymbol(ph)) continue;
    out.push_back(ph);
  }
  return out;
}

}  // namespace xlasr
