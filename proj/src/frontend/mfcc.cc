// frontend/mfcc.cc

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

#include "frontend/mfcc.h"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "base/xlasr-common.h"

namespace xlasr {

double MelScale(double hz) { return 1127.0 * std::log(1.0 + hz / 700.0); }

int NumFrames(long num_samples, const FeatureConfig &config) {
  long win = config.WindowSamples(), shift = config.ShiftSamples();
  if (num_samples < win) return 0;
  return static_cast<int>(1 + (num_samples - win) / shift);
}

MfccComputer::MfccComputer(const FeatureConfig &config) : config_(config) {
  config_.Check();
  const int win = config_.WindowSamples();
  fft_size_ = 1;
  while (fft_size_ < win) fft_size_ <<= 1;

  window_.resize(win);
  for (int n = 0; n < win; ++n)
    window_[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n / (win - 1));

  const int num_bins = fft_size_ / 2 + 1;
  const double nyquist = config_.sample_rate / 2.0;
  const double high = config_.high_freq > 0 ? config_.high_freq : nyquist;
  if (!(config_.low_freq >= 0 && high > config_.low_freq && high <= nyquist))
    XLASR_ERR << "invalid mel frequency range [" << config_.low_freq << ", " << high
              << "]";
  const double mel_lo = MelScale(config_.low_freq), mel_hi = MelScale(high);
  const double mel_step = (mel_hi - mel_lo) / (config_.num_mels + 1);
  mel_banks_.assign(config_.num_mels, std::vector<double>(num_bins, 0.0));
  for (int m = 0; m < config_.num_mels; ++m) {
    double left = mel_lo + m * mel_step, center = left + mel_step,
           right = center + mel_step;
    for (int k = 0; k < num_bins; ++k) {
      double mel = MelScale(k * config_.sample_rate / fft_size_);
      if (mel > left && mel <= center)
        mel_banks_[m][k] = (mel - left) / (center - left);
      else if (mel > center && mel < right)
        mel_banks_[m][k] = (right - mel) / (right - center);
    }
  }

  const int M = config_.num_mels;
  dct_.assign(config_.num_ceps, std::vector<double>(M, 0.0));
  for (int c = 0; c < config_.num_ceps; ++c) {
    double scale = c == 0 ? std::sqrt(1.0 / M) : std::sqrt(2.0 / M);
    for (int m = 0; m < M; ++m)
      dct_[c][m] = scale * std::cos(std::numbers::pi * c * (m + 0.5) / M);
  }
}

FeatureMatrix MfccComputer::Compute(std::span<const double> waveform) const {
  const int win = config_.WindowSamples(), shift = config_.ShiftSamples();
  const int T = NumFrames(static_cast<long>(waveform.size()), config_);
  if (T == 0)
    XLASR_ERR << "waveform of " << waveform.size() << " samples is shorter than one "
              << win << "-sample window";
  for (size_t i = 0; i < waveform.size(); ++i)
    if (!std::isfinite(waveform[i])) XLASR_ERR << "non-finite sample at index " << i;

  std::mt19937_64 rng(config_.dither_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::FFT<double> fft;
  std::vector<double> frame(fft_size_);
  std::vector<std::complex<double>> spectrum;
  std::vector<double> power(fft_size_ / 2 + 1);
  std::vector<double> log_mel(config_.num_mels);

  FeatureMatrix out;
  out.fingerprint = config_.Fingerprint();
  out.data.resize(T, config_.num_ceps);
  for (int t = 0; t < T; ++t) {
    const double *x = waveform.data() + static_cast<size_t>(t) * shift;
    std::fill(frame.begin(), frame.end(), 0.0);
    for (int n = 0; n < win; ++n) {
      frame[n] = x[n];
      if (config_.dither > 0) frame[n] += config_.dither * gauss(rng);
    }
    for (int n = win - 1; n > 0; --n) frame[n] -= config_.preemphasis * frame[n - 1];
    frame[0] -= config_.preemphasis * frame[0];
    for (int n = 0; n < win; ++n) frame[n] *= window_[n];

    fft.fwd(spectrum, frame);
    for (size_t k = 0; k < power.size(); ++k) power[k] = std::norm(spectrum[k]);

    for (int m = 0; m < config_.num_mels; ++m) {
      double e = 0.0;
      const auto &bank = mel_banks_[m];
      for (size_t k = 0; k < power.size(); ++k) e += bank[k] * power[k];
      log_mel[m] = std::log(std::max(e, config_.log_floor));
    }
    for (int c = 0; c < config_.num_ceps; ++c) {
      double v = 0.0;
      for (int m = 0; m < config_.num_mels; ++m) v += dct_[c][m] * log_mel[m];
      out.data(t, c) = static_cast<float>(v);
    }
  }
  return out;
}

FeatureMatrix ComputeMfcc(std::span<const double> waveform, const FeatureConfig &config) {
  return MfccComputer(config).Compute(waveform);
}

}  // namespace xlasr
