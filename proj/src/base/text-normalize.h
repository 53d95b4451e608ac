// base/text-normalize.h

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

#ifndef XLASR_BASE_TEXT_NORMALIZE_H_
#define XLASR_BASE_TEXT_NORMALIZE_H_

#include <string>
#include <string_view>

namespace xlasr {

// Canonical form used wherever words are compared: Unicode NFC followed by
// full case folding. Throws on invalid UTF-8.
std::string NormalizeWord(std::string_view word);

}  // namespace xlasr

#endif  // XLASR_BASE_TEXT_NORMALIZE_H_
