// frontend/features.h

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

#ifndef XLASR_FRONTEND_FEATURES_H_
#define XLASR_FRONTEND_FEATURES_H_

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace xlasr {

using FeatureData = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct FeatureConfig {
  double sample_rate = 16000.0;  // Hz
  double window_ms = 25.0;
  double shift_ms = 10.0;
  int num_mels = 23;
  int num_ceps = 13;
  double log_floor = 1e-10;
  double preemphasis = 0.97;
  double low_freq = 20.0;
  double high_freq = 0.0;  // <= 0 means Nyquist
  double dither = 0.0;     // stddev of Gaussian dither in sample units
  uint64_t dither_seed = 0;

  void Check() const;
  int WindowSamples() const;
  int ShiftSamples() const;
  // Identifies the settings that change feature values.
  std::string Fingerprint() const;
};

/// frames x dims feature values, plus the fingerprint of the configuration
/// that produced them.
struct FeatureMatrix {
  FeatureData data;
  std::string fingerprint;

  int NumFrames() const { return static_cast<int>(data.rows()); }
  int Dim() const { return static_cast<int>(data.cols()); }
};

// Per-utterance mean/variance normalization: every dimension gets mean 0 and
// unit (population) variance. Constant dimensions become all zeros.
// Requires at least two frames.
FeatureMatrix ApplyCmvn(const FeatureMatrix &feats);

/// Binary feature archive.
///
///   header:  "XLFA" | u32 version (=1)
///   record:  u32 id_len | id bytes | u32 fp_len | fingerprint bytes |
///            u32 frames | u32 dims | frames*dims f32 (row-major)
///
/// All integers and floats little-endian. Records follow one another until
/// end of file.
class FeatureArchiveWriter {
 public:
  explicit FeatureArchiveWriter(std::ostream &os);
  void Write(const std::string &utt_id, const FeatureMatrix &feats);
 private:
  std::ostream &os_;
};

std::map<std::string, FeatureMatrix> ReadFeatureArchive(std::istream &is);
std::map<std::string, FeatureMatrix> ReadFeatureArchive(const std::string &path);
void WriteFeatureArchive(const std::map<std::string, FeatureMatrix> &feats,
                         const std::string &path);

// Plain-text dump: "utt_id  [" then one frame per line, "]" closing.
void WriteFeatureText(const std::string &utt_id, const FeatureMatrix &feats,
                      std::ostream &os);

}  // namespace xlasr

#endif  // XLASR_FRONTEND_FEATURES_H_
