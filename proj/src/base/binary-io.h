// base/binary-io.h

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

#ifndef XLASR_BASE_BINARY_IO_H_
#define XLASR_BASE_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "base/xlasr-common.h"

// Little-endian primitives shared by the binary container formats.
namespace xlasr {

inline void WriteU32LE(std::ostream &os, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char *>(b), 4);
}

inline void WriteU64LE(std::ostream &os, uint64_t v) {
  WriteU32LE(os, static_cast<uint32_t>(v));
  WriteU32LE(os, static_cast<uint32_t>(v >> 32));
}

inline void WriteF32LE(std::ostream &os, float f) {
  WriteU32LE(os, std::bit_cast<uint32_t>(f));
}

inline void WriteLenString(std::ostream &os, const std::string &s) {
  WriteU32LE(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

// Returns false on clean EOF before the first byte; throws on a short read.
inline bool TryReadU32LE(std::istream &is, uint32_t *v) {
  unsigned char b[4];
  is.read(reinterpret_cast<char *>(b), 4);
  if (is.gcount() == 0 && is.eof()) return false;
  if (is.gcount() != 4) XLASR_ERR << "truncated binary stream";
  *v = b[0] | (uint32_t{b[1]} << 8) | (uint32_t{b[2]} << 16) | (uint32_t{b[3]} << 24);
  return true;
}

inline uint32_t ReadU32LE(std::istream &is) {
  uint32_t v;
  if (!TryReadU32LE(is, &v)) XLASR_ERR << "unexpected end of binary stream";
  return v;
}

inline uint64_t ReadU64LE(std::istream &is) {
  uint64_t lo = ReadU32LE(is);
  uint64_t hi = ReadU32LE(is);
  return lo | (hi << 32);
}

inline float ReadF32LE(std::istream &is) { return std::bit_cast<float>(ReadU32LE(is)); }

inline std::string ReadLenString(std::istream &is, uint32_t max_len = 1u << 30) {
  uint32_t n = ReadU32LE(is);
  if (n > max_len) XLASR_ERR << "implausible string length " << n;
  std::string s(n, '\0');
  is.read(s.data(), n);
  if (static_cast<uint32_t>(is.gcount()) != n) XLASR_ERR << "truncated string";
  return s;
}

}  // namespace xlasr

#endif  // XLASR_BASE_BINARY_IO_H_
