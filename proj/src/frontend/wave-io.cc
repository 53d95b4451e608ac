// frontend/wave-io.cc

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

#include "frontend/wave-io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "base/binary-io.h"
#include "base/xlasr-common.h"

namespace xlasr {

namespace {

std::string ReadTag(std::istream &is) {
  char tag[4];
  is.read(tag, 4);
  if (is.gcount() != 4) return "";
  return std::string(tag, 4);
}

uint16_t ReadU16LE(std::istream &is) {
  unsigned char b[2];
  is.read(reinterpret_cast<char *>(b), 2);
  if (is.gcount() != 2) XLASR_ERR << "truncated WAV header";
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

void WriteU16LE(std::ostream &os, uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  os.write(b, 2);
}

}  // namespace

WaveData ReadWave(std::istream &is) {
  if (ReadTag(is) != "RIFF") XLASR_ERR << "not a RIFF file";
  ReadU32LE(is);
  if (ReadTag(is) != "WAVE") XLASR_ERR << "not a WAVE file";
  bool have_fmt = false;
  WaveData wave;
  for (;;) {
    std::string tag = ReadTag(is);
    if (tag.empty()) XLASR_ERR << "WAV file has no data chunk";
    uint32_t size = ReadU32LE(is);
    if (tag == "fmt ") {
      uint16_t format = ReadU16LE(is), channels = ReadU16LE(is);
      uint32_t rate = ReadU32LE(is);
      ReadU32LE(is);  // byte rate
      ReadU16LE(is);  // block align
      uint16_t bits = ReadU16LE(is);
      if (format != 1) XLASR_ERR << "only PCM WAV is supported (format " << format << ")";
      if (channels != 1) XLASR_ERR << "only mono WAV is supported (" << channels << " channels)";
      if (bits != 16) XLASR_ERR << "only 16-bit WAV is supported (" << bits << " bits)";
      wave.sample_rate = rate;
      is.ignore(size - 16 + (size & 1));
      have_fmt = true;
    } else if (tag == "data") {
      if (!have_fmt) XLASR_ERR << "WAV data chunk before fmt chunk";
      uint32_t n = size / 2;
      wave.samples.resize(n);
      for (uint32_t i = 0; i < n; ++i)
        wave.samples[i] = static_cast<int16_t>(ReadU16LE(is));
      return wave;
    } else {
      is.ignore(size + (size & 1));
    }
  }
}

WaveData ReadWave(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) XLASR_ERR << "cannot open " << path;
  try {
    return ReadWave(is);
  } catch (const Error &e) {
    XLASR_ERR << path << ": " << e.what();
  }
}

void WriteWave(const WaveData &wave, std::ostream &os) {
  uint32_t data_bytes = static_cast<uint32_t>(wave.samples.size() * 2);
  uint32_t rate = static_cast<uint32_t>(wave.sample_rate);
  os.write("RIFF", 4);
  WriteU32LE(os, 36 + data_bytes);
  os.write("WAVEfmt ", 8);
  WriteU32LE(os, 16);
  WriteU16LE(os, 1);
  WriteU16LE(os, 1);
  WriteU32LE(os, rate);
  WriteU32LE(os, rate * 2);
  WriteU16LE(os, 2);
  WriteU16LE(os, 16);
  os.write("data", 4);
  WriteU32LE(os, data_bytes);
  for (double s : wave.samples) {
    long v = std::lround(std::clamp(s, -32768.0, 32767.0));
    WriteU16LE(os, static_cast<uint16_t>(static_cast<int16_t>(v)));
  }
}

void WriteWave(const WaveData &wave, const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) XLASR_ERR << "cannot write " << path;
  WriteWave(wave, os);
}

}  // namespace xlasr
