// harness/modality.h

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

#ifndef XLASR_HARNESS_MODALITY_H_
#define XLASR_HARNESS_MODALITY_H_

#include <string>
#include <vector>

#include "corpus/manifest.h"

namespace xlasr {

struct ModelKind {
  enum Kind { kMono, kMulti } kind = kMulti;
  // For kMono: the single language modelled, or empty for one mono-lingual
  // model per spoken language.
  std::string language;

  std::string Name() const;
  bool operator==(const ModelKind &) const = default;
};

// "mono", "mono(L)" or "multi".
ModelKind ParseModelKind(const std::string &text);

struct AdaptationModality {
  enum Kind { kNone, kM1, kM2, kM3, kPoolByL1, kPoolByL2 } kind = kNone;
  // Target language of m1/m2 (empty: each spoken language with non-native
  // adaptation data) or the pooling language.
  std::string language;

  std::string Name() const;
  bool operator==(const AdaptationModality &) const = default;
};

// "none", "m1", "m1(L)", "m2", "m2(L)", "m3", "pool_by_L1(X)", "pool_by_L2(L)".
AdaptationModality ParseModality(const std::string &text);

// Throws unless m1 goes with mono models and m2/m3/pools with the multi model.
void CheckModalityPairing(const ModelKind &model, const AdaptationModality &modality);

// Adaptation records for a modality with a fixed language:
//   m1(L), m2(L):     ada records with L2 = L and L1 != L
//   m3:               all non-native ada records
//   pool_by_L1(X):    ada records with L1 = X (and L2 != X)
//   pool_by_L2(L):    ada records with L2 = L, any L1 (L1 != L)
// Throws when the selection is empty or the modality is "none" or lacks its
// language.
std::vector<const UtteranceRecord *> SelectAdaptationData(const CorpusManifest &manifest,
                                                          const AdaptationModality &modality);

// The concrete single-target modalities a run expands to: m1/m2 without a
// language become one entry per spoken language that has non-native
// adaptation data; everything else is returned as is.
std::vector<AdaptationModality> ExpandModality(const CorpusManifest &manifest,
                                               const AdaptationModality &modality);

}  // namespace xlasr

#endif  // XLASR_HARNESS_MODALITY_H_
