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

#include "sgram/audio_io.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "sgram/errors.h"

namespace sgram {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatIeeeFloat = 0x0003;

std::uint32_t ReadU32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t ReadU16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

void PutU32(std::uint32_t v, std::vector<unsigned char>* out) {
  out->push_back(v & 0xff);
  out->push_back((v >> 8) & 0xff);
  out->push_back((v >> 16) & 0xff);
  out->push_back((v >> 24) & 0xff);
}

void PutU16(std::uint16_t v, std::vector<unsigned char>* out) {
  out->push_back(v & 0xff);
  out->push_back((v >> 8) & 0xff);
}

}  // namespace

AudioClip ReadWav(const std::string& path, int expected_rate_hz) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path);
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw MalformedWavError(path + ": not a RIFF/WAVE file");
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t chunk_len = ReadU32(chunk + 4);
    if (pos + 8 + chunk_len > bytes.size()) {
      throw MalformedWavError(path + ": truncated chunk");
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (chunk_len < 16) throw MalformedWavError(path + ": short fmt chunk");
      format = ReadU16(chunk + 8);
      channels = ReadU16(chunk + 10);
      rate = ReadU32(chunk + 12);
      bits = ReadU16(chunk + 22);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_len = chunk_len;
    }
    pos += 8 + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }
  if (!have_fmt || data == nullptr) {
    throw MalformedWavError(path + ": missing fmt or data chunk");
  }
  if (channels < 1 || channels > 2) {
    throw UnsupportedWavError(path + ": only mono and stereo are supported");
  }
  const bool is_pcm16 = format == kFormatPcm && bits == 16;
  const bool is_float32 = format == kFormatIeeeFloat && bits == 32;
  if (!is_pcm16 && !is_float32) {
    throw UnsupportedWavError(path +
                              ": only 16-bit PCM and 32-bit float supported");
  }
  if (expected_rate_hz != 0 &&
      rate != static_cast<std::uint32_t>(expected_rate_hz)) {
    throw SampleRateMismatchError(
        path + ": sample rate " + std::to_string(rate) + " != expected " +
        std::to_string(expected_rate_hz) + " (no resampling)");
  }

  const int bytes_per_sample = is_pcm16 ? 2 : 4;
  const std::uint32_t frame_size = bytes_per_sample * channels;
  const std::uint32_t frames = data_len / frame_size;

  AudioClip clip;
  clip.sample_rate_hz = static_cast<int>(rate);
  clip.source_path = path;
  clip.samples.resize(frames);
  for (std::uint32_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    for (int c = 0; c < channels; ++c) {
      const unsigned char* p = data + f * frame_size + c * bytes_per_sample;
      if (is_pcm16) {
        const std::int16_t v =
            static_cast<std::int16_t>(p[0] | (static_cast<int>(p[1]) << 8));
        acc += v / 32768.0;
      } else {
        float v;
        std::uint32_t u = ReadU32(p);
        std::memcpy(&v, &u, sizeof(v));
        acc += v;
      }
    }
    clip.samples[f] = acc / channels;
  }
  return clip;
}

WriteStats WriteWav(const std::string& path, const AudioClip& clip) {
  if (clip.samples.size() == 0) {
    throw std::invalid_argument("WriteWav: empty clip");
  }
  if (!clip.samples.allFinite()) {
    throw std::invalid_argument("WriteWav: non-finite samples");
  }
  if (clip.sample_rate_hz <= 0) {
    throw std::invalid_argument("WriteWav: bad sample rate");
  }
  WriteStats stats;
  const std::uint32_t frames = static_cast<std::uint32_t>(clip.samples.size());
  const std::uint32_t data_len = frames * 2;

  std::vector<unsigned char> bytes;
  bytes.reserve(44 + data_len);
  bytes.insert(bytes.end(), {'R', 'I', 'F', 'F'});
  PutU32(36 + data_len, &bytes);
  bytes.insert(bytes.end(), {'W', 'A', 'V', 'E'});
  bytes.insert(bytes.end(), {'f', 'm', 't', ' '});
  PutU32(16, &bytes);
  PutU16(kFormatPcm, &bytes);
  PutU16(1, &bytes);  // mono
  PutU32(static_cast<std::uint32_t>(clip.sample_rate_hz), &bytes);
  PutU32(static_cast<std::uint32_t>(clip.sample_rate_hz) * 2, &bytes);
  PutU16(2, &bytes);   // block align
  PutU16(16, &bytes);  // bits
  bytes.insert(bytes.end(), {'d', 'a', 't', 'a'});
  PutU32(data_len, &bytes);

  for (std::uint32_t f = 0; f < frames; ++f) {
    double x = clip.samples[f];
    if (x < -1.0 || x > 1.0) {
      ++stats.clipped;
      x = x < -1.0 ? -1.0 : 1.0;
    }
    long q = std::lround(x * 32768.0);
    if (q > 32767) q = 32767;
    if (q < -32768) q = -32768;
    const std::uint16_t u = static_cast<std::uint16_t>(static_cast<std::int16_t>(q));
    PutU16(u, &bytes);
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("write failed: " + path);
  }
  return stats;
}

Eigen::ArrayXd Prepare(const Eigen::ArrayXd& samples, int filter_len,
                       int stride) {
  if (samples.size() == 0) {
    throw std::invalid_argument("Prepare: empty signal");
  }
  if (filter_len < 1 || stride < 1) {
    throw std::invalid_argument("Prepare: bad filter_len or stride");
  }
  const double peak = samples.abs().maxCoeff();
  if (!(peak > 0.0)) {
    throw std::invalid_argument("Prepare: all-zero signal");
  }
  Eigen::Index target = samples.size();
  if (target < filter_len) target = filter_len;
  const Eigen::Index rem = (target - filter_len) % stride;
  if (rem != 0) target += stride - rem;

  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(target);
  out.head(samples.size()) = samples / peak;
  return out;
}

}  // namespace sgram
