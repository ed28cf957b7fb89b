// Copyright 2026 The Sgram Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SGRAM_AUDIO_IO_H_
#define SGRAM_AUDIO_IO_H_

#include <Eigen/Core>
#include <string>

namespace sgram {

struct AudioClip {
  Eigen::ArrayXd samples;   // in [-1, 1]
  int sample_rate_hz = 0;
  std::string source_path;
};

// Reads a RIFF/WAVE file: 16-bit PCM or 32-bit IEEE float, mono or stereo
// (stereo is downmixed by averaging). 16-bit samples are scaled by 1/32768.
// If expected_rate_hz is nonzero, a differing file rate raises
// SampleRateMismatchError; there is no resampling.
AudioClip ReadWav(const std::string& path, int expected_rate_hz = 0);

struct WriteStats {
  int clipped = 0;  // samples outside [-1, 1] clamped on write
};

// Writes 16-bit PCM mono. Samples must be finite; values outside [-1, 1]
// are clamped and counted.
WriteStats WriteWav(const std::string& path, const AudioClip& clip);

// Peak-normalizes (divide by max |sample|) and zero-pads so the length is at
// least filter_len and (length - filter_len) is a multiple of stride.
// Idempotent. Throws std::invalid_argument on empty or all-zero input.
Eigen::ArrayXd Prepare(const Eigen::ArrayXd& samples, int filter_len,
                       int stride);

}  // namespace sgram

#endif  // SGRAM_AUDIO_IO_H_
