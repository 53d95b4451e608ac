// lm/bigram-lm.cc

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

#include "lm/bigram-lm.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "base/text-normalize.h"
#include "base/xlasr-common.h"

namespace xlasr {

namespace {
constexpr double kLn10 = 2.302585092994045684;
constexpr double kArpaLogZero = -99.0;
}  // namespace

int BigramLM::WordId(const std::string &word) const {
  auto it = index_.find(word);
  return it == index_.end() ? -1 : it->second;
}

void BigramLM::BuildIndex() {
  index_.clear();
  for (size_t i = 0; i < vocab_.size(); ++i) index_[vocab_[i]] = static_cast<int>(i);
  end_id_ = WordId(kSentenceEnd);
  if (end_id_ < 0) XLASR_ERR << "vocabulary lacks " << kSentenceEnd;
}

double BigramLM::LogProb(int history, int word) const {
  const auto &seen = seen_log_[history];
  auto it = seen.find(word);
  if (it != seen.end()) return it->second;
  return backoff_log_[history] + unigram_log_[word];
}

double BigramLM::LogProb(const std::string &history, const std::string &word) const {
  int h = history == kSentenceStart ? StartId() : WordId(history);
  int w = WordId(word);
  if (h < 0) XLASR_ERR << "unknown history '" << history << "'";
  if (w < 0) XLASR_ERR << "out-of-vocabulary word '" << word << "'";
  return LogProb(h, w);
}

size_t BigramLM::NumBigrams() const {
  size_t n = 0;
  for (const auto &m : seen_log_) n += m.size();
  return n;
}

BigramLM TrainBigram(const std::vector<Sentence> &sentences) {
  if (sentences.empty()) XLASR_ERR << "cannot train a bigram LM on an empty corpus";
  std::set<std::string> words;
  for (size_t i = 0; i < sentences.size(); ++i) {
    if (sentences[i].empty()) XLASR_ERR << "sentence " << i << " is empty";
    for (const auto &w : sentences[i]) {
      if (w == kSentenceStart || w == kSentenceEnd)
        XLASR_ERR << "sentence " << i << " contains reserved token " << w;
      words.insert(w);
    }
  }
  BigramLM lm;
  words.insert(kSentenceEnd);
  lm.vocab_.assign(words.begin(), words.end());
  lm.BuildIndex();

  const size_t V = lm.vocab_.size();
  std::vector<long> unigram_count(V, 0);
  lm.counts_.assign(V + 1, {});
  for (const auto &sent : sentences) {
    int prev = lm.StartId();
    for (size_t i = 0; i <= sent.size(); ++i) {
      int w = i < sent.size() ? lm.WordId(sent[i]) : lm.end_id_;
      ++unigram_count[w];
      auto &h = lm.counts_[prev];
      ++h.count;
      if (h.followers[w]++ == 0) ++h.distinct;
      prev = w;
    }
  }
  long total = 0;
  for (long c : unigram_count) total += c;
  lm.num_tokens_ = total;

  lm.unigram_log_.resize(V);
  for (size_t w = 0; w < V; ++w)
    lm.unigram_log_[w] = std::log(static_cast<double>(unigram_count[w]) / total);

  lm.backoff_log_.assign(V + 1, 0.0);
  lm.seen_log_.assign(V + 1, {});
  for (size_t v = 0; v <= V; ++v) {
    const auto &h = lm.counts_[v];
    if (h.count == 0) {
      // Only </s> is never a history; it keeps the unigram distribution.
      continue;
    }
    double denom = static_cast<double>(h.count + h.distinct);
    lm.backoff_log_[v] = std::log(h.distinct / denom);
    for (const auto &[w, c] : h.followers) {
      double p = (c + h.distinct * std::exp(lm.unigram_log_[w])) / denom;
      lm.seen_log_[v][w] = std::log(p);
    }
  }
  return lm;
}

PerplexityResult ComputePerplexity(const BigramLM &lm,
                                   const std::vector<Sentence> &sentences) {
  PerplexityResult res;
  for (const auto &sent : sentences) {
    int prev = lm.StartId();
    for (size_t i = 0; i <= sent.size(); ++i) {
      int w;
      if (i < sent.size()) {
        w = lm.WordId(sent[i]);
        if (w < 0 || w == lm.EndId())
          XLASR_ERR << "out-of-vocabulary word '" << sent[i]
                    << "' (closed-vocabulary evaluation)";
      } else {
        w = lm.EndId();
      }
      res.total_log_prob += lm.LogProb(prev, w);
      ++res.num_events;
      prev = w;
    }
  }
  if (res.num_events == 0) XLASR_ERR << "perplexity of an empty text is undefined";
  res.ppl = std::exp(-res.total_log_prob / res.num_events);
  return res;
}

void BigramLM::WriteArpa(std::ostream &os) const {
  const size_t V = vocab_.size();
  os << std::setprecision(15);
  os << "\n\\data\\\n";
  os << "ngram 1=" << V + 1 << '\n';
  os << "ngram 2=" << NumBigrams() << "\n\n";
  os << "\\1-grams:\n";
  // <s> first, then the sorted vocabulary.
  auto name = [&](int id) -> const std::string & {
    static const std::string start = kSentenceStart;
    return id == StartId() ? start : vocab_[id];
  };
  std::vector<int> order;
  order.push_back(StartId());
  for (size_t w = 0; w < V; ++w) order.push_back(static_cast<int>(w));
  for (int id : order) {
    double p = id == StartId() ? kArpaLogZero : unigram_log_[id] / kLn10;
    os << p << '\t' << name(id);
    if (id != end_id_) os << '\t' << backoff_log_[id] / kLn10;
    os << '\n';
  }
  os << "\n\\2-grams:\n";
  for (int h : order)
    for (const auto &[w, lp] : seen_log_[h])
      os << lp / kLn10 << '\t' << name(h) << ' ' << vocab_[w] << '\n';
  os << "\n\\end\\\n";
}

void BigramLM::ReadArpa(std::istream &is) {
  std::string line;
  enum { kHeader, kData, kUni, kBi, kEnd } section = kHeader;
  size_t expect_uni = 0, expect_bi = 0;
  struct Uni { std::string word; double lp; double bow; bool has_bow; };
  std::vector<Uni> unis;
  std::vector<std::tuple<std::string, std::string, double>> bis;
  while (std::getline(is, line)) {
    std::string t = Trim(line);
    if (t.empty()) continue;
    if (t == "\\data\\") { section = kData; continue; }
    if (t == "\\1-grams:") { section = kUni; continue; }
    if (t == "\\2-grams:") { section = kBi; continue; }
    if (t == "\\end\\") { section = kEnd; break; }
    std::vector<std::string> f = SplitWhitespace(t);
    switch (section) {
      case kData: {
        if (t.rfind("ngram ", 0) != 0) XLASR_ERR << "bad ARPA header line: " << t;
        auto kv = SplitOn(f[1], '=');
        if (kv.size() != 2) XLASR_ERR << "bad ARPA header line: " << t;
        size_t n = std::stoul(kv[1]);
        if (kv[0] == "1") expect_uni = n;
        else if (kv[0] == "2") expect_bi = n;
        else XLASR_ERR << "only bigram ARPA files are supported";
        break;
      }
      case kUni:
        if (f.size() != 2 && f.size() != 3) XLASR_ERR << "bad 1-gram line: " << t;
        unis.push_back({f[1], std::stod(f[0]), f.size() == 3 ? std::stod(f[2]) : 0.0,
                        f.size() == 3});
        break;
      case kBi:
        if (f.size() != 3) XLASR_ERR << "bad 2-gram line: " << t;
        bis.emplace_back(f[1], f[2], std::stod(f[0]));
        break;
      default:
        XLASR_ERR << "unexpected ARPA line: " << t;
    }
  }
  if (section != kEnd) XLASR_ERR << "ARPA file lacks \\end\\";
  if (unis.size() != expect_uni || bis.size() != expect_bi)
    XLASR_ERR << "ARPA n-gram counts do not match header";

  std::set<std::string> words;
  for (const auto &u : unis)
    if (u.word != kSentenceStart) words.insert(u.word);
  vocab_.assign(words.begin(), words.end());
  BuildIndex();
  const size_t V = vocab_.size();
  unigram_log_.assign(V, 0.0);
  backoff_log_.assign(V + 1, 0.0);
  seen_log_.assign(V + 1, {});
  counts_.clear();
  num_tokens_ = 0;
  for (const auto &u : unis) {
    int id = u.word == kSentenceStart ? StartId() : WordId(u.word);
    if (id != StartId()) unigram_log_[id] = u.lp * kLn10;
    if (u.has_bow) backoff_log_[id] = u.bow * kLn10;
  }
  for (const auto &[h, w, lp] : bis) {
    int hid = h == kSentenceStart ? StartId() : WordId(h);
    int wid = WordId(w);
    if (hid < 0 || wid < 0) XLASR_ERR << "2-gram uses unknown word: " << h << ' ' << w;
    seen_log_[hid][wid] = lp * kLn10;
  }
}

std::vector<Sentence> ReadSentences(std::istream &is) {
  std::vector<Sentence> out;
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> toks = SplitWhitespace(line);
    if (toks.empty()) continue;
    for (auto &t : toks) t = NormalizeWord(t);
    out.push_back(std::move(toks));
  }
  return out;
}

std::vector<Sentence> ReadSentences(const std::string &path) {
  std::ifstream is(path);
  if (!is) XLASR_ERR << "cannot open text " << path;
  return ReadSentences(is);
}

void WriteArpaFile(const BigramLM &lm, const std::string &path) {
  std::ofstream os(path);
  if (!os) XLASR_ERR << "cannot write " << path;
  lm.WriteArpa(os);
  if (!os) XLASR_ERR << "write failed: " << path;
}

BigramLM ReadArpaFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) XLASR_ERR << "cannot open " << path;
  BigramLM lm;
  lm.ReadArpa(is);
  return lm;
}

}  // namespace xlasr
