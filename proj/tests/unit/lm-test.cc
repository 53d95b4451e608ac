// unit/lm-test.cc

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

#include <cmath>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "lm/bigram-lm.h"
#include "test-util.h"

namespace xlasr {

namespace {

std::vector<Sentence> RandomCorpus(std::mt19937_64 &rng) {
  const int vocab = UniformInt(rng, 1, 8);
  std::vector<Sentence> out(UniformInt(rng, 1, 12));
  for (auto &s : out)
    for (int n = UniformInt(rng, 1, 7); n > 0; --n)
      s.push_back("w" + std::to_string(UniformInt(rng, 0, vocab - 1)));
  return out;
}

double SumOverVocab(const BigramLM &lm, int history) {
  double s = 0.0;
  for (size_t w = 0; w < lm.NumWords(); ++w) s += std::exp(lm.LogProb(history, w));
  return s;
}

}  // namespace

TEST_CASE("hand-computed Witten-Bell probabilities") {
  BigramLM lm = TrainBigram({{"a", "a", "b"}});
  CHECK(std::abs(std::exp(lm.LogProb("a", "a")) - 0.5) < 1e-12);
  CHECK(std::abs(std::exp(lm.LogProb("a", "b")) - 0.375) < 1e-12);
  CHECK(std::abs(std::exp(lm.LogProb("a", "</s>")) - 0.125) < 1e-12);
  CHECK(std::abs(SumOverVocab(lm, lm.WordId("a")) - 1.0) < 1e-12);
  // Unigram over predicted tokens: a 2/4, b 1/4, </s> 1/4.
  CHECK(std::abs(std::exp(lm.UnigramLogProb(lm.WordId("b"))) - 0.25) < 1e-12);
}

TEST_CASE("hand-computed perplexity") {
  BigramLM lm = TrainBigram({{"a", "a", "b"}});
  PerplexityResult r = ComputePerplexity(lm, {{"a", "b"}});
  CHECK(r.num_events == 3);
  double expected = std::exp(-(std::log(0.75) + std::log(0.375) + std::log(0.625)) / 3.0);
  CHECK(std::abs(r.ppl - expected) < 1e-12);
  CHECK(std::abs(r.ppl - 1.785) < 1e-3);
}

TEST_CASE("out-of-vocabulary words are an error") {
  BigramLM lm = TrainBigram({{"a", "a", "b"}});
  CHECK(ThrowsWith([&] { ComputePerplexity(lm, {{"a", "zzz"}}); }, "zzz"));
  CHECK_THROWS_AS(TrainBigram({}), Error);
  CHECK_THROWS_AS(TrainBigram({{}}), Error);
}

TEST_CASE("uniform model has perplexity V") {
  // Unigram 1/V for each predicted token, no bigrams, unit back-off weights.
  const int V = 5;  // four words and </s>
  std::ostringstream arpa;
  arpa << std::setprecision(17);
  arpa << "\\data\\\nngram 1=" << V + 1 << "\nngram 2=0\n\n\\1-grams:\n";
  arpa << "-99\t<s>\t0\n";
  for (auto w : {"a", "b", "c", "d"}) arpa << std::log10(1.0 / V) << "\t" << w << "\t0\n";
  arpa << std::log10(1.0 / V) << "\t</s>\n\n\\2-grams:\n\n\\end\\\n";
  BigramLM lm;
  std::istringstream is(arpa.str());
  lm.ReadArpa(is);
  PerplexityResult r = ComputePerplexity(lm, {{"a", "b", "c"}, {"d"}, {"d", "d", "a"}});
  CHECK(std::abs(r.ppl - V) < 1e-12);
}

TEST_CASE("normalization and counts on random corpora") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Sentence> corpus = RandomCorpus(rng);
    BigramLM lm = TrainBigram(corpus);
    for (int h = 0; h <= static_cast<int>(lm.NumWords()); ++h) {
      if (h == lm.EndId()) continue;
      CHECK(std::abs(SumOverVocab(lm, h) - 1.0) < 1e-9);
      const auto &st = lm.Counts()[h];
      CHECK(st.distinct <= st.count);
      for (size_t w = 0; w < lm.NumWords(); ++w) {
        double p = std::exp(lm.LogProb(h, w));
        CHECK(p > 0.0);
        CHECK(p <= 1.0);
        if (!st.followers.count(w))
          CHECK(std::abs(p - st.distinct * std::exp(lm.UnigramLogProb(w)) /
                                 (st.count + st.distinct)) < 1e-12);
      }
    }
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto &s : corpus) {
      std::string prev = "<s>";
      for (const auto &w : s) pairs.emplace(prev, w), prev = w;
      pairs.emplace(prev, "</s>");
    }
    CHECK(lm.NumBigrams() == pairs.size());
  }
}

TEST_CASE("a duplicated sentence never gets a higher perplexity") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Sentence> corpus = RandomCorpus(rng);
    const Sentence s = corpus[UniformInt(rng, 0, corpus.size() - 1)];
    double before = ComputePerplexity(TrainBigram(corpus), {s}).ppl;
    corpus.push_back(s);
    double after = ComputePerplexity(TrainBigram(corpus), {s}).ppl;
    CHECK(after <= before + 1e-12);
  }
}

TEST_CASE("ARPA round trip") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    BigramLM lm = TrainBigram(RandomCorpus(rng));
    std::ostringstream os, os2;
    lm.WriteArpa(os);
    lm.WriteArpa(os2);
    CHECK(os.str() == os2.str());
    BigramLM back;
    std::istringstream is(os.str());
    back.ReadArpa(is);
    REQUIRE(back.Vocab() == lm.Vocab());
    for (int h = 0; h <= static_cast<int>(lm.NumWords()); ++h) {
      if (h == lm.EndId()) continue;
      for (size_t w = 0; w < lm.NumWords(); ++w)
        CHECK(std::abs(std::exp(back.LogProb(h, w)) - std::exp(lm.LogProb(h, w))) < 1e-9);
    }
    CHECK(os.str().find("ngram 2=" + std::to_string(lm.NumBigrams())) != std::string::npos);
    CHECK(os.str().find("ngram 1=" + std::to_string(lm.NumWords() + 1)) != std::string::npos);
  }
}

TEST_CASE("long texts do not underflow") {
  BigramLM lm = TrainBigram({{"a", "b"}, {"b", "a", "a"}});
  Sentence longs(1000000, "a");
  PerplexityResult r = ComputePerplexity(lm, {longs});
  CHECK(std::isfinite(r.total_log_prob));
  CHECK(r.num_events == 1000001);
  CHECK(r.ppl > 1.0);
}

}  // namespace xlasr
