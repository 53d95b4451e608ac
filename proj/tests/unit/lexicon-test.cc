// unit/lexicon-test.cc

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

#include <random>
#include <sstream>

#include "doctest.h"
#include "lexicon/lexicon.h"
#include "lexicon/phone-inventory.h"
#include "test-util.h"

namespace xlasr {

namespace {

LanguageSet Set(std::initializer_list<const char *> l) {
  LanguageSet s;
  for (auto *x : l) s.insert(x);
  return s;
}

PhoneInventory RandomInventory(std::mt19937_64 &rng, const std::vector<LanguageCode> &langs) {
  PhoneInventory inv;
  const int n = UniformInt(rng, 1, 12);
  for (int i = 0; i < n; ++i) {
    std::string sym = "p" + std::to_string(UniformInt(rng, 0, 15));
    inv.Add(sym, langs[UniformInt(rng, 0, langs.size() - 1)]);
  }
  return inv;
}

}  // namespace

TEST_CASE("reference inventory overlap statistics") {
  OverlapStats s = ComputeOverlapStats(ReferenceInventory());
  CHECK(s.total == 67);
  CHECK(s.subset_counts.at(Set({"it", "de", "en"})) == 18);
  CHECK(s.subset_counts.at(Set({"de", "en"})) == 9);
  CHECK(s.subset_counts.at(Set({"it", "de"})) == 2);
  CHECK(s.subset_counts.at(Set({"it", "en"})) == 2);
  CHECK(s.subset_counts.at(Set({"de"})) == 16);
  CHECK(s.subset_counts.at(Set({"en"})) == 14);
  CHECK(s.subset_counts.at(Set({"it"})) == 6);
  CHECK(s.subset_counts.size() == 7);
  CHECK(s.LanguageTotal("it") == 28);
  CHECK(s.LanguageTotal("de") == 45);
  CHECK(s.LanguageTotal("en") == 43);
}

TEST_CASE("merging per-language inventories") {
  const PhoneInventory &ref = ReferenceInventory();
  PhoneInventory it = ref.Restrict("it"), de = ref.Restrict("de"), en = ref.Restrict("en");
  CHECK(it.NumPhones() == 28);
  CHECK(de.NumPhones() == 45);
  CHECK(en.NumPhones() == 43);
  CHECK(MergeInventories({it, de, en}) == ref);
  // it + de: every phone except the 14 English-only ones.
  PhoneInventory itde = MergeInventories({it, de});
  CHECK(itde.NumPhones() == 18 + 9 + 2 + 2 + 16 + 6);
  CHECK(MergeInventories({it, it}) == it);
  CHECK(ref.InLanguage("k", "it"));
  CHECK(ref.InLanguage("a", "it"));
  CHECK(ref.InLanguage("z", "it"));
  CHECK_FALSE(ref.InLanguage("TH", "it"));
  CHECK(ref.Contains("O\"9"));
  CHECK(ref.Languages("O\"9") == Set({"de"}));
  CHECK(ref.Contains("S"));
  CHECK(ref.Contains("s"));
}

TEST_CASE("single-language inventory has one subset") {
  OverlapStats s = ComputeOverlapStats(ReferenceInventory().Restrict("de"));
  CHECK(s.total == 45);
  CHECK(s.subset_counts.size() == 1);
  CHECK(s.subset_counts.at(Set({"de"})) == 45);
}

TEST_CASE("merge is commutative and associative; subsets sum to total") {
  std::mt19937_64 rng(3);
  const std::vector<LanguageCode> langs{"a", "b", "c", "d"};
  for (int trial = 0; trial < 100; ++trial) {
    PhoneInventory x = RandomInventory(rng, langs), y = RandomInventory(rng, langs),
                   z = RandomInventory(rng, langs);
    CHECK(MergeInventories({x, y}) == MergeInventories({y, x}));
    CHECK(MergeInventories({MergeInventories({x, y}), z}) ==
          MergeInventories({x, MergeInventories({y, z})}));
    OverlapStats s = ComputeOverlapStats(MergeInventories({x, y, z}));
    size_t sum = 0;
    for (const auto &[k, v] : s.subset_counts) sum += v;
    CHECK(sum == s.total);
  }
}

TEST_CASE("inventory text round trip") {
  std::stringstream ss;
  ReferenceInventory().Write(ss);
  PhoneInventory back;
  back.Read(ss);
  CHECK(back == ReferenceInventory());
}

TEST_CASE("phone symbols are validated") {
  CHECK_NOTHROW(ValidatePhoneSymbol("tS"));
  CHECK_NOTHROW(ValidatePhoneSymbol("O\"9"));
  CHECK_THROWS_AS(ValidatePhoneSymbol(""), Error);
  CHECK_THROWS_AS(ValidatePhoneSymbol("a b"), Error);
}

TEST_CASE("lexicon parsing") {
  const PhoneInventory &ref = ReferenceInventory();
  std::istringstream en("# comment\nCAT k AE t\n\nDOG d O g\n");
  Lexicon lex = ReadLexicon(en, "en", ref, "en.lex");
  REQUIRE(lex.Lookup("CAT") != nullptr);
  CHECK(*lex.Lookup("CAT") == std::vector<Pronunciation>{{"k", "AE", "t"}});
  CHECK(lex.Contains("cat"));
  CHECK(lex.NumWords() == 2);

  std::istringstream it("CASA k a z a\n");
  CHECK(ReadLexicon(it, "it", ref).Contains("casa"));

  std::istringstream bad("CAT k AE t\nCAT k XX t\n");
  CHECK(ThrowsWith([&] { ReadLexicon(bad, "en", ref, "en.lex"); }, "XX"));
  std::istringstream bad2("CAT k XX t\n");
  CHECK(ThrowsWith([&] { ReadLexicon(bad2, "en", ref, "en.lex"); }, "en.lex:1: word 'CAT'"));
  std::istringstream empty("CAT\n");
  CHECK(ThrowsWith([&] { ReadLexicon(empty, "en", ref); }, "empty pronunciation"));
  // A phone of another language is rejected too.
  std::istringstream foreign("CASA k a z a\n");
  CHECK(ThrowsWith([&] { ReadLexicon(foreign, "en", ref); }, "'a'"));
}

TEST_CASE("duplicate entries are dropped, variants kept") {
  std::istringstream is("READ r i: d\nREAD r i: d\nread r E d\n");
  PhoneInventory inv;
  for (auto p : {"r", "i:", "d", "E"}) inv.Add(p, "x");
  Lexicon lex = ReadLexicon(is, "x", inv);
  REQUIRE(lex.Lookup("Read") != nullptr);
  CHECK(lex.Lookup("Read")->size() == 2);
}

TEST_CASE("words are normalized, phones are not") {
  Lexicon lex("de");
  lex.AddPronunciation("Straße", {"S", "t", "r", "a:", "s", "@"});
  CHECK(lex.Contains("STRASSE"));  // full case folding maps ß to ss
  CHECK(lex.Contains("straße"));
  CHECK(lex.Contains("STRAßE"));
  // NFD input finds the NFC entry.
  lex.AddPronunciation("M\xC3\xBC" "de", {"m", "y:", "d", "@"});
  CHECK(lex.Contains("Mu\xCC\x88" "de"));
  CHECK_THROWS_AS(lex.AddPronunciation("x", {}), Error);
}

TEST_CASE("geminate collapsing") {
  CHECK(NormalizeItalian({"g", "a", "t", "t", "o"}) == Pronunciation{"g", "a", "t", "o"});
  CHECK(NormalizeItalian({"k", "a", "z", "a"}) == Pronunciation{"k", "a", "z", "a"});
  CHECK(NormalizeItalian({"a", "a"}) == Pronunciation{"a", "a"});
  CHECK(NormalizeItalian({"p", "p", "p"}) == Pronunciation{"p"});
  std::mt19937_64 rng(9);
  const std::vector<PhoneSymbol> phones{"t", "a", "s", "o", "tS", "e"};
  for (int trial = 0; trial < 200; ++trial) {
    Pronunciation p;
    for (int i = UniformInt(rng, 1, 8); i > 0; --i) p.push_back(phones[UniformInt(rng, 0, 5)]);
    Pronunciation once = NormalizeItalian(p);
    CHECK(NormalizeItalian(once) == once);
  }
}

}  // namespace xlasr
