// harness/result-matrix.h

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

#ifndef XLASR_HARNESS_RESULT_MATRIX_H_
#define XLASR_HARNESS_RESULT_MATRIX_H_

#include <map>
#include <string>
#include <vector>

#include "corpus/manifest.h"
#include "scoring/wer.h"

namespace xlasr {

struct ResultCell {
  EditCounts counts;
  int num_utterances = 0;
  std::string model_id;
  std::string adaptation_id;  // "none" for unadapted models

  double Wer() const { return counts.Wer(); }
  bool operator==(const ResultCell &) const = default;
};

/// WERs of one recognizer set-up per (speaker L1, spoken L2) eval pair,
/// laid out as a table: rows are the speakers' mother language, columns the
/// spoken language.
struct ResultMatrix {
  std::string name;
  std::string model_kind;
  std::string adaptation;
  std::vector<std::string> languages;  // row/column order
  std::map<LanguagePair, ResultCell> cells;
  // Config hash, seeds, versions, adaptation data, freezing checks.
  std::string provenance_json = "{}";

  bool operator==(const ResultMatrix &) const = default;

  // Pooled counts over the cells accepted by `pred`.
  EditCounts Pooled(bool (*pred)(const LanguagePair &)) const;
  EditCounts PooledNonNative() const;
  EditCounts PooledNonNative(const std::string &l2) const;
};

// Row and column languages present in the matrix, in `languages` order.
std::vector<std::string> RowLanguages(const ResultMatrix &m);
std::vector<std::string> ColumnLanguages(const ResultMatrix &m);

// Text table: a title line, a header row of spoken languages, one row per
// speaker language with WER percentages (one decimal) and "-" for absent
// cells. An empty matrix renders as "(no cells)".
std::string FormatMatrixText(const ResultMatrix &m);
// CSV: l1,l2,ref_words,substitutions,deletions,insertions,wer,model_id,adaptation_id
std::string FormatMatrixCsv(const ResultMatrix &m);

std::string MatrixToJson(const ResultMatrix &m);
ResultMatrix MatrixFromJson(const std::string &text);

// A list of matrices as written by the experiment runner:
// {"version": 1, "config_hash": ..., "matrices": [...]}.
std::string ResultsToJson(const std::vector<ResultMatrix> &matrices,
                          const std::string &config_hash);
std::vector<ResultMatrix> ResultsFromJson(const std::string &text);

}  // namespace xlasr

#endif  // XLASR_HARNESS_RESULT_MATRIX_H_
