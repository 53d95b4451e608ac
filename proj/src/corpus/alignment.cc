// corpus/alignment.cc

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

#include "corpus/alignment.h"

#include <fstream>
#include <ostream>

#include "base/xlasr-common.h"

namespace xlasr {

void WritePhoneSegments(const std::string &utt_id,
                        const std::vector<PhoneSegment> &segments, std::ostream &os) {
  for (const auto &s : segments)
    os << utt_id << ' ' << s.phone << ' ' << s.start << ' ' << s.end << '\n';
}

void WriteStateAlignment(const std::string &utt_id, const std::vector<int> &states,
                         std::ostream &os) {
  os << utt_id;
  for (int s : states) os << ' ' << s;
  os << '\n';
}

std::map<std::string, std::vector<int>> ReadStateAlignments(std::istream &is) {
  std::map<std::string, std::vector<int>> out;
  std::string line;
  while (std::getline(is, line)) {
    auto f = SplitWhitespace(line);
    if (f.empty()) continue;
    std::vector<int> states;
    states.reserve(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) {
      try {
        states.push_back(std::stoi(f[i]));
      } catch (const std::exception &) {
        XLASR_ERR << "bad state id '" << f[i] << "' in alignment of " << f[0];
      }
    }
    if (!out.emplace(f[0], std::move(states)).second)
      XLASR_ERR << "duplicate alignment for " << f[0];
  }
  return out;
}

std::map<std::string, std::vector<int>> ReadStateAlignments(const std::string &path) {
  std::ifstream is(path);
  if (!is) XLASR_ERR << "cannot open " << path;
  return ReadStateAlignments(is);
}

}  // namespace xlasr
