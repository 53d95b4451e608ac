// harness/modality.cc

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

#include "harness/modality.h"

#include <regex>
#include <set>

#include "base/xlasr-common.h"

namespace xlasr {

namespace {

// Splits "name(arg)" into name and arg; arg is empty without parentheses.
bool SplitCall(const std::string &text, std::string *name, std::string *arg) {
  static const std::regex re(R"(^\s*([A-Za-z0-9_]+)\s*(?:\(\s*([^()\s]*)\s*\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) return false;
  *name = m[1];
  *arg = m[2];
  return true;
}

}  // namespace

std::string ModelKind::Name() const {
  if (kind == kMulti) return "multi";
  return language.empty() ? "mono" : "mono(" + language + ")";
}

ModelKind ParseModelKind(const std::string &text) {
  std::string name, arg;
  if (SplitCall(text, &name, &arg)) {
    if (name == "multi" && arg.empty()) return {ModelKind::kMulti, ""};
    if (name == "mono") return {ModelKind::kMono, arg};
  }
  XLASR_ERR << "bad model kind '" << text << "' (expected mono, mono(L) or multi)";
}

std::string AdaptationModality::Name() const {
  switch (kind) {
    case kNone: return "none";
    case kM1: return language.empty() ? "m1" : "m1(" + language + ")";
    case kM2: return language.empty() ? "m2" : "m2(" + language + ")";
    case kM3: return "m3";
    case kPoolByL1: return "pool_by_L1(" + language + ")";
    case kPoolByL2: return "pool_by_L2(" + language + ")";
  }
  return "?";
}

AdaptationModality ParseModality(const std::string &text) {
  std::string name, arg;
  if (SplitCall(text, &name, &arg)) {
    if (name == "none" && arg.empty()) return {AdaptationModality::kNone, ""};
    if (name == "m1") return {AdaptationModality::kM1, arg};
    if (name == "m2") return {AdaptationModality::kM2, arg};
    if (name == "m3" && arg.empty()) return {AdaptationModality::kM3, ""};
    if (name == "pool_by_L1" && !arg.empty()) return {AdaptationModality::kPoolByL1, arg};
    if (name == "pool_by_L2" && !arg.empty()) return {AdaptationModality::kPoolByL2, arg};
  }
  XLASR_ERR << "bad adaptation modality '" << text
            << "' (expected none, m1[(L)], m2[(L)], m3, pool_by_L1(L) or pool_by_L2(L))";
}

void CheckModalityPairing(const ModelKind &model, const AdaptationModality &modality) {
  using A = AdaptationModality;
  if (modality.kind == A::kNone) return;
  bool mono = model.kind == ModelKind::kMono;
  if (modality.kind == A::kM1 && !mono)
    XLASR_ERR << "modality m1 adapts mono-lingual models; model kind is " << model.Name();
  if (modality.kind != A::kM1 && mono)
    XLASR_ERR << "modality " << modality.Name() << " adapts the multi-lingual model; model kind is "
              << model.Name();
  if (modality.kind == A::kM1 && !model.language.empty() && !modality.language.empty() &&
      model.language != modality.language)
    XLASR_ERR << "m1(" << modality.language << ") cannot adapt the mono-lingual "
              << model.language << " model";
}

std::vector<const UtteranceRecord *> SelectAdaptationData(const CorpusManifest &manifest,
                                                          const AdaptationModality &modality) {
  using A = AdaptationModality;
  if (modality.kind == A::kNone) XLASR_ERR << "modality 'none' selects no adaptation data";
  if (modality.kind != A::kM3 && modality.language.empty())
    XLASR_ERR << "modality " << modality.Name() << " needs a language";
  std::vector<const UtteranceRecord *> out;
  for (const auto &r : manifest.Records()) {
    if (r.split != Split::kAda || r.IsNative()) continue;
    bool take = false;
    switch (modality.kind) {
      case A::kM1:
      case A::kM2:
      case A::kPoolByL2: take = r.spoken_language == modality.language; break;
      case A::kM3: take = true; break;
      case A::kPoolByL1: take = r.mother_language == modality.language; break;
      case A::kNone: break;
    }
    if (take) out.push_back(&r);
  }
  if (out.empty())
    XLASR_ERR << "modality " << modality.Name() << " selects no adaptation data";
  return out;
}

std::vector<AdaptationModality> ExpandModality(const CorpusManifest &manifest,
                                               const AdaptationModality &modality) {
  using A = AdaptationModality;
  if ((modality.kind != A::kM1 && modality.kind != A::kM2) || !modality.language.empty())
    return {modality};
  std::set<std::string> targets;
  for (const auto &r : manifest.Records())
    if (r.split == Split::kAda && !r.IsNative()) targets.insert(r.spoken_language);
  if (targets.empty())
    XLASR_ERR << "modality " << modality.Name() << " selects no adaptation data";
  std::vector<AdaptationModality> out;
  for (const auto &l : targets) out.push_back({modality.kind, l});
  return out;
}

}  // namespace xlasr
