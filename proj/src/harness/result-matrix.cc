// harness/result-matrix.cc

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

#include "harness/result-matrix.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "base/xlasr-common.h"
#include "json.hpp"

namespace xlasr {

using nlohmann::ordered_json;

EditCounts ResultMatrix::Pooled(bool (*pred)(const LanguagePair &)) const {
  EditCounts total;
  for (const auto &[pair, cell] : cells)
    if (pred(pair)) total += cell.counts;
  return total;
}

EditCounts ResultMatrix::PooledNonNative() const {
  return Pooled([](const LanguagePair &p) { return p.first != p.second; });
}

EditCounts ResultMatrix::PooledNonNative(const std::string &l2) const {
  EditCounts total;
  for (const auto &[pair, cell] : cells)
    if (pair.first != pair.second && pair.second == l2) total += cell.counts;
  return total;
}

namespace {

std::vector<std::string> Ordered(const ResultMatrix &m, bool rows) {
  std::set<std::string> present;
  for (const auto &[pair, cell] : m.cells) present.insert(rows ? pair.first : pair.second);
  std::vector<std::string> out;
  for (const auto &l : m.languages)
    if (present.erase(l)) out.push_back(l);
  out.insert(out.end(), present.begin(), present.end());
  return out;
}

std::string Percent(double wer) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * wer);
  return buf;
}

}  // namespace

std::vector<std::string> RowLanguages(const ResultMatrix &m) { return Ordered(m, true); }
std::vector<std::string> ColumnLanguages(const ResultMatrix &m) { return Ordered(m, false); }

std::string FormatMatrixText(const ResultMatrix &m) {
  std::ostringstream os;
  os << m.name << " (model " << m.model_kind << ", adaptation " << m.adaptation << ")\n";
  if (m.cells.empty()) {
    os << "(no cells)\n";
    return os.str();
  }
  auto rows = RowLanguages(m), cols = ColumnLanguages(m);
  const int w = 8;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%-10s", "L1\\L2");
  os << buf;
  for (const auto &c : cols) {
    std::snprintf(buf, sizeof(buf), "%*s", w, c.c_str());
    os << buf;
  }
  os << "\n";
  for (const auto &r : rows) {
    std::snprintf(buf, sizeof(buf), "%-10s", r.c_str());
    os << buf;
    for (const auto &c : cols) {
      auto it = m.cells.find({r, c});
      std::string v = it == m.cells.end() ? "-" : Percent(it->second.Wer());
      std::snprintf(buf, sizeof(buf), "%*s", w, v.c_str());
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

std::string FormatMatrixCsv(const ResultMatrix &m) {
  std::ostringstream os;
  os << "l1,l2,ref_words,substitutions,deletions,insertions,wer,model_id,adaptation_id\n";
  for (const auto &r : RowLanguages(m))
    for (const auto &c : ColumnLanguages(m)) {
      auto it = m.cells.find({r, c});
      if (it == m.cells.end()) continue;
      const EditCounts &e = it->second.counts;
      os << r << "," << c << "," << e.ref_words << "," << e.substitutions << "," << e.deletions
         << "," << e.insertions << "," << Percent(e.Wer()) << "," << it->second.model_id << ","
         << it->second.adaptation_id << "\n";
    }
  return os.str();
}

namespace {

ordered_json MatrixJson(const ResultMatrix &m) {
  ordered_json j;
  j["name"] = m.name;
  j["model_kind"] = m.model_kind;
  j["adaptation"] = m.adaptation;
  j["languages"] = m.languages;
  auto &cells = j["cells"] = ordered_json::array();
  for (const auto &[pair, c] : m.cells)
    cells.push_back({{"l1", pair.first},
                     {"l2", pair.second},
                     {"ref_words", c.counts.ref_words},
                     {"substitutions", c.counts.substitutions},
                     {"deletions", c.counts.deletions},
                     {"insertions", c.counts.insertions},
                     {"num_utterances", c.num_utterances},
                     {"wer", c.Wer()},
                     {"model_id", c.model_id},
                     {"adaptation_id", c.adaptation_id}});
  j["provenance"] = ordered_json::parse(m.provenance_json);
  return j;
}

ResultMatrix MatrixFromJsonValue(const ordered_json &j) {
  ResultMatrix m;
  m.name = j.at("name").get<std::string>();
  m.model_kind = j.at("model_kind").get<std::string>();
  m.adaptation = j.at("adaptation").get<std::string>();
  m.languages = j.at("languages").get<std::vector<std::string>>();
  for (const auto &c : j.at("cells")) {
    ResultCell cell;
    cell.counts.ref_words = c.at("ref_words").get<long>();
    cell.counts.substitutions = c.at("substitutions").get<long>();
    cell.counts.deletions = c.at("deletions").get<long>();
    cell.counts.insertions = c.at("insertions").get<long>();
    cell.num_utterances = c.at("num_utterances").get<int>();
    cell.model_id = c.at("model_id").get<std::string>();
    cell.adaptation_id = c.at("adaptation_id").get<std::string>();
    LanguagePair key{c.at("l1").get<std::string>(), c.at("l2").get<std::string>()};
    if (!m.cells.emplace(key, cell).second)
      XLASR_ERR << "duplicate cell " << key.first << "/" << key.second;
  }
  m.provenance_json = j.at("provenance").dump();
  return m;
}

}  // namespace

std::string MatrixToJson(const ResultMatrix &m) { return MatrixJson(m).dump(2) + "\n"; }

ResultMatrix MatrixFromJson(const std::string &text) {
  try {
    return MatrixFromJsonValue(ordered_json::parse(text));
  } catch (const nlohmann::json::exception &e) {
    XLASR_ERR << "bad result matrix: " << e.what();
  }
}

std::string ResultsToJson(const std::vector<ResultMatrix> &matrices,
                          const std::string &config_hash) {
  ordered_json j;
  j["version"] = 1;
  j["config_hash"] = config_hash;
  auto &ms = j["matrices"] = ordered_json::array();
  for (const auto &m : matrices) ms.push_back(MatrixJson(m));
  return j.dump(2) + "\n";
}

std::vector<ResultMatrix> ResultsFromJson(const std::string &text) {
  try {
    auto j = ordered_json::parse(text);
    if (j.contains("matrices")) {
      if (j.at("version").get<int>() != 1) XLASR_ERR << "unsupported results version";
      std::vector<ResultMatrix> out;
      for (const auto &m : j.at("matrices")) out.push_back(MatrixFromJsonValue(m));
      return out;
    }
    return {MatrixFromJsonValue(j)};
  } catch (const nlohmann::json::exception &e) {
    XLASR_ERR << "bad results file: " << e.what();
  }
}

}  // namespace xlasr
