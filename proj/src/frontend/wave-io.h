// frontend/wave-io.h

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

#ifndef XLASR_FRONTEND_WAVE_IO_H_
#define XLASR_FRONTEND_WAVE_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace xlasr {

struct WaveData {
  double sample_rate = 0.0;
  std::vector<double> samples;  // raw 16-bit values, not rescaled
  double DurationSec() const { return samples.size() / sample_rate; }
};

// Mono 16-bit PCM RIFF/WAVE only.
WaveData ReadWave(std::istream &is);
WaveData ReadWave(const std::string &path);
void WriteWave(const WaveData &wave, std::ostream &os);
void WriteWave(const WaveData &wave, const std::string &path);

}  // namespace xlasr

#endif  // XLASR_FRONTEND_WAVE_IO_H_
