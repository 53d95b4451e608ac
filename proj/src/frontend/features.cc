// frontend/features.cc

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

#include "frontend/features.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "base/binary-io.h"
#include "base/xlasr-common.h"

namespace xlasr {

void FeatureConfig::Check() const {
  if (sample_rate <= 0) XLASR_ERR << "sample rate must be positive";
  if (!(shift_ms > 0 && window_ms > shift_ms))
    XLASR_ERR << "need window_ms > shift_ms > 0 (got " << window_ms << ", " << shift_ms
              << ")";
  if (num_mels <= 0 || num_ceps <= 0 || num_ceps > num_mels)
    XLASR_ERR << "need 0 < num_ceps <= num_mels";
  if (log_floor <= 0) XLASR_ERR << "log floor must be positive";
  if (preemphasis < 0 || preemphasis >= 1) XLASR_ERR << "preemphasis must be in [0, 1)";
  if (WindowSamples() < 2) XLASR_ERR << "window too short";
}

int FeatureConfig::WindowSamples() const {
  return static_cast<int>(std::lround(sample_rate * window_ms / 1000.0));
}

int FeatureConfig::ShiftSamples() const {
  return static_cast<int>(std::lround(sample_rate * shift_ms / 1000.0));
}

std::string FeatureConfig::Fingerprint() const {
  std::ostringstream os;
  os << std::setprecision(17) << "mfcc:sr=" << sample_rate << ";win=" << window_ms
     << ";shift=" << shift_ms << ";mels=" << num_mels << ";ceps=" << num_ceps
     << ";floor=" << log_floor << ";pre=" << preemphasis << ";lo=" << low_freq
     << ";hi=" << high_freq << ";dither=" << dither << ";seed=" << dither_seed;
  return os.str();
}

FeatureMatrix ApplyCmvn(const FeatureMatrix &feats) {
  const int T = feats.NumFrames(), D = feats.Dim();
  if (T < 2) XLASR_ERR << "CMVN needs at least 2 frames, got " << T;
  FeatureMatrix out;
  out.fingerprint = feats.fingerprint + "|cmvn";
  out.data.resize(T, D);
  for (int d = 0; d < D; ++d) {
    double sum = 0.0;
    float lo = feats.data(0, d), hi = lo;
    for (int t = 0; t < T; ++t) {
      float v = feats.data(t, d);
      if (!std::isfinite(v)) XLASR_ERR << "non-finite feature at frame " << t;
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    double mean = sum / T;
    double var = 0.0;
    for (int t = 0; t < T; ++t) {
      double c = feats.data(t, d) - mean;
      var += c * c;
    }
    var /= T;
    constexpr double kVarFloor = 1e-20;
    if (lo == hi || var < kVarFloor) {
      out.data.col(d).setZero();
      continue;
    }
    double inv_std = 1.0 / std::sqrt(var);
    for (int t = 0; t < T; ++t)
      out.data(t, d) = static_cast<float>((feats.data(t, d) - mean) * inv_std);
  }
  return out;
}

namespace {
constexpr char kArchiveMagic[4] = {'X', 'L', 'F', 'A'};
constexpr uint32_t kArchiveVersion = 1;
}  // namespace

FeatureArchiveWriter::FeatureArchiveWriter(std::ostream &os) : os_(os) {
  os_.write(kArchiveMagic, 4);
  WriteU32LE(os_, kArchiveVersion);
}

void FeatureArchiveWriter::Write(const std::string &utt_id, const FeatureMatrix &feats) {
  WriteLenString(os_, utt_id);
  WriteLenString(os_, feats.fingerprint);
  WriteU32LE(os_, static_cast<uint32_t>(feats.NumFrames()));
  WriteU32LE(os_, static_cast<uint32_t>(feats.Dim()));
  for (int t = 0; t < feats.NumFrames(); ++t)
    for (int d = 0; d < feats.Dim(); ++d) WriteF32LE(os_, feats.data(t, d));
  if (!os_) XLASR_ERR << "failed writing features for " << utt_id;
}

std::map<std::string, FeatureMatrix> ReadFeatureArchive(std::istream &is) {
  char magic[4];
  is.read(magic, 4);
  if (is.gcount() != 4 || std::string(magic, 4) != std::string(kArchiveMagic, 4))
    XLASR_ERR << "not a feature archive (bad magic)";
  uint32_t version = ReadU32LE(is);
  if (version != kArchiveVersion)
    XLASR_ERR << "unsupported feature archive version " << version;
  std::map<std::string, FeatureMatrix> out;
  uint32_t id_len;
  while (TryReadU32LE(is, &id_len)) {
    std::string id(id_len, '\0');
    is.read(id.data(), id_len);
    FeatureMatrix m;
    m.fingerprint = ReadLenString(is);
    uint32_t frames = ReadU32LE(is), dims = ReadU32LE(is);
    m.data.resize(frames, dims);
    for (uint32_t t = 0; t < frames; ++t)
      for (uint32_t d = 0; d < dims; ++d) m.data(t, d) = ReadF32LE(is);
    if (!out.emplace(id, std::move(m)).second)
      XLASR_ERR << "duplicate utterance " << id << " in feature archive";
  }
  return out;
}

std::map<std::string, FeatureMatrix> ReadFeatureArchive(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) XLASR_ERR << "cannot open " << path;
  return ReadFeatureArchive(is);
}

void WriteFeatureArchive(const std::map<std::string, FeatureMatrix> &feats,
                         const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) XLASR_ERR << "cannot write " << path;
  FeatureArchiveWriter writer(os);
  for (const auto &[id, m] : feats) writer.Write(id, m);
}

void WriteFeatureText(const std::string &utt_id, const FeatureMatrix &feats,
                      std::ostream &os) {
  os << utt_id << "  [";
  for (int t = 0; t < feats.NumFrames(); ++t) {
    os << "\n ";
    for (int d = 0; d < feats.Dim(); ++d) os << ' ' << feats.data(t, d);
  }
  os << " ]\n";
}

}  // namespace xlasr
