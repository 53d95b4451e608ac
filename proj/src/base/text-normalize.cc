// base/text-normalize.cc

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

#include "base/text-normalize.h"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "base/xlasr-common.h"

namespace xlasr {

std::string NormalizeWord(std::string_view word) {
  bool ascii = true;
  for (unsigned char c : word) {
    if (c >= 0x80) { ascii = false; break; }
  }
  if (ascii) {
    std::string out(word);
    for (char &c : out)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
  }
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) XLASR_ERR << "ICU NFC unavailable: " << u_errorName(status);
  icu::UnicodeString in = icu::UnicodeString::fromUTF8(
      icu::StringPiece(word.data(), static_cast<int32_t>(word.size())));
  if (in.indexOf(static_cast<UChar>(0xFFFD)) >= 0)
    XLASR_ERR << "invalid UTF-8 in word '" << word << "'";
  icu::UnicodeString folded = in;
  folded.foldCase();
  icu::UnicodeString normalized = nfc->normalize(folded, status);
  if (U_FAILURE(status))
    XLASR_ERR << "normalization failed for '" << word << "': " << u_errorName(status);
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

}  // namespace xlasr
