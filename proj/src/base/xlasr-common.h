// base/xlasr-common.h

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

#ifndef XLASR_BASE_XLASR_COMMON_H_
#define XLASR_BASE_XLASR_COMMON_H_

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xlasr {

/// Base exception for all recoverable failures (bad input, I/O, config).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

namespace internal {

class MessageBuilder {
 public:
  template <typename T>
  MessageBuilder &operator<<(const T &v) {
    ss_ << v;
    return *this;
  }
  std::string str() const { return ss_.str(); }
 private:
  std::ostringstream ss_;
};

struct ErrorThrower {
  // Lower precedence than <<, so the whole message is built first.
  [[noreturn]] void operator=(const MessageBuilder &mb) { throw Error(mb.str()); }
};

struct WarningEmitter {
  void operator=(const MessageBuilder &mb);
};

struct LogEmitter {
  void operator=(const MessageBuilder &mb);
};

}  // namespace internal

/// Verbosity for XLASR_LOG; warnings are always printed unless silenced.
void SetVerbose(int level);
int GetVerbose();
void SetWarningsEnabled(bool enabled);

#define XLASR_ERR \
  ::xlasr::internal::ErrorThrower() = ::xlasr::internal::MessageBuilder()
#define XLASR_WARN \
  ::xlasr::internal::WarningEmitter() = ::xlasr::internal::MessageBuilder()
#define XLASR_LOG \
  if (::xlasr::GetVerbose() < 1) {} else \
    ::xlasr::internal::LogEmitter() = ::xlasr::internal::MessageBuilder()

// Splits on runs of ASCII whitespace.
std::vector<std::string> SplitWhitespace(std::string_view line);
std::vector<std::string> SplitOn(std::string_view s, char delim);
std::string Trim(std::string_view s);
std::string JoinStrings(const std::vector<std::string> &parts,
                        std::string_view sep);

// Stable across platforms and runs, unlike std::hash.
uint64_t Fnv1a64(std::string_view data, uint64_t basis = 0xcbf29ce484222325ULL);
uint64_t MixSeed(uint64_t seed, std::string_view key);
std::string HexDigest(uint64_t h);

std::string ReadFileToString(const std::string &path);
void WriteStringToFile(const std::string &path, const std::string &contents);

}  // namespace xlasr

#endif  // XLASR_BASE_XLASR_COMMON_H_
