// frontend/mfcc.h

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

#ifndef XLASR_FRONTEND_MFCC_H_
#define XLASR_FRONTEND_MFCC_H_

#include <span>
#include <string>
#include <vector>

#include "frontend/features.h"

namespace xlasr {

// Frames produced for `num_samples` samples: 1 + (N - window) / shift, or 0
// when the signal is shorter than one window.
int NumFrames(long num_samples, const FeatureConfig &config);

/// MFCC extraction: per frame, pre-emphasis, Hamming window, power spectrum
/// of the zero-padded FFT (next power of two), triangular mel filterbank,
/// floored natural log and orthonormal DCT-II, keeping the first num_ceps
/// coefficients (c0 included). Frames never reach beyond the signal.
class MfccComputer {
 public:
  explicit MfccComputer(const FeatureConfig &config);

  // Throws if the waveform is shorter than one window or has non-finite
  // samples.
  FeatureMatrix Compute(std::span<const double> waveform) const;

  const FeatureConfig &Config() const { return config_; }
  int FftSize() const { return fft_size_; }
  // num_mels x (fft_size/2 + 1) filter weights.
  const std::vector<std::vector<double>> &MelBanks() const { return mel_banks_; }

 private:
  FeatureConfig config_;
  int fft_size_;
  std::vector<double> window_;
  std::vector<std::vector<double>> mel_banks_;
  std::vector<std::vector<double>> dct_;  // num_ceps x num_mels
};

FeatureMatrix ComputeMfcc(std::span<const double> waveform, const FeatureConfig &config);

double MelScale(double hz);

}  // namespace xlasr

#endif  // XLASR_FRONTEND_MFCC_H_
