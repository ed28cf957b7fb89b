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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "sgram/audio_io.h"
#include "sgram/errors.h"
#include "test_util.h"

using namespace sgram;
using namespace sgram::testing;

namespace {

std::filesystem::path TempDir() {
  auto dir = std::filesystem::temp_directory_path() / "sgram_audio_test";
  std::filesystem::create_directories(dir);
  return dir;
}

// Raw WAV writer independent of the production one, for crafting fixtures.
void WriteRawWav(const std::string& path, std::uint16_t format,
                 std::uint16_t channels, std::uint32_t rate,
                 std::uint16_t bits, const std::vector<unsigned char>& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  auto u32 = [&](std::uint32_t v) {
    char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff),
                 char((v >> 24) & 0xff)};
    out.write(b, 4);
  };
  auto u16 = [&](std::uint16_t v) {
    char b[2] = {char(v & 0xff), char((v >> 8) & 0xff)};
    out.write(b, 2);
  };
  out.write("RIFF", 4);
  u32(36 + static_cast<std::uint32_t>(data.size()));
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  u32(16);
  u16(format);
  u16(channels);
  u32(rate);
  u32(rate * channels * bits / 8);
  u16(channels * bits / 8);
  u16(bits);
  out.write("data", 4);
  u32(static_cast<std::uint32_t>(data.size()));
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
}

std::vector<unsigned char> Pcm16Bytes(const std::vector<std::int16_t>& v) {
  std::vector<unsigned char> bytes;
  for (std::int16_t s : v) {
    bytes.push_back(static_cast<std::uint16_t>(s) & 0xff);
    bytes.push_back((static_cast<std::uint16_t>(s) >> 8) & 0xff);
  }
  return bytes;
}

}  // namespace

TEST_CASE("pcm16 scaling follows the 1/32768 convention") {
  const auto path = (TempDir() / "scale.wav").string();
  WriteRawWav(path, 1, 1, 16000, 16, Pcm16Bytes({32767, -32768, 0, 16384}));
  const AudioClip clip = ReadWav(path);
  REQUIRE(clip.samples.size() == 4);
  CHECK(clip.samples[0] == doctest::Approx(32767.0 / 32768.0).epsilon(1e-15));
  CHECK(clip.samples[1] == -1.0);
  CHECK(clip.samples[2] == 0.0);
  CHECK(clip.samples[3] == 0.5);
  CHECK(clip.sample_rate_hz == 16000);
}

TEST_CASE("stereo frames downmix by averaging") {
  const auto path = (TempDir() / "stereo.wav").string();
  WriteRawWav(path, 1, 2, 16000, 16, Pcm16Bytes({16384, -16384, 8192, 8192}));
  const AudioClip clip = ReadWav(path);
  REQUIRE(clip.samples.size() == 2);
  CHECK(clip.samples[0] == 0.0);  // (0.5 + -0.5) / 2
  CHECK(clip.samples[1] == 0.25);
}

TEST_CASE("float32 files read back their values") {
  const auto path = (TempDir() / "float.wav").string();
  std::vector<unsigned char> data;
  for (float v : {0.25f, -0.75f, 1.0f}) {
    std::uint32_t u;
    std::memcpy(&u, &v, 4);
    data.push_back(u & 0xff);
    data.push_back((u >> 8) & 0xff);
    data.push_back((u >> 16) & 0xff);
    data.push_back((u >> 24) & 0xff);
  }
  WriteRawWav(path, 3, 1, 22050, 32, data);
  const AudioClip clip = ReadWav(path);
  REQUIRE(clip.samples.size() == 3);
  CHECK(clip.samples[0] == 0.25);
  CHECK(clip.samples[1] == -0.75);
  CHECK(clip.samples[2] == 1.0);
}

TEST_CASE("error variants are distinct") {
  const auto dir = TempDir();
  {
    std::ofstream junk((dir / "junk.wav").string(), std::ios::binary);
    junk << "definitely not a wav file";
  }
  CHECK_THROWS_AS(ReadWav((dir / "junk.wav").string()), MalformedWavError);

  WriteRawWav((dir / "alaw.wav").string(), 6, 1, 8000, 8, {0, 0});
  CHECK_THROWS_AS(ReadWav((dir / "alaw.wav").string()), UnsupportedWavError);

  WriteRawWav((dir / "rate.wav").string(), 1, 1, 44100, 16,
              Pcm16Bytes({0, 0}));
  CHECK_THROWS_AS(ReadWav((dir / "rate.wav").string(), 16000),
                  SampleRateMismatchError);
  CHECK_NOTHROW(ReadWav((dir / "rate.wav").string(), 44100));

  CHECK_THROWS_AS(ReadWav((dir / "missing.wav").string()), IoError);
}

TEST_CASE("write then read stays within one quantization step") {
  auto rng = MakeRng(51);
  AudioClip clip;
  clip.sample_rate_hz = 16000;
  clip.samples = RandomSignal(rng, 500);
  const auto path = (TempDir() / "roundtrip.wav").string();
  const WriteStats stats = WriteWav(path, clip);
  CHECK(stats.clipped == 0);
  const AudioClip back = ReadWav(path, 16000);
  REQUIRE(back.samples.size() == clip.samples.size());
  CHECK((back.samples - clip.samples).abs().maxCoeff() <= 1.0 / 32768.0);
}

TEST_CASE("write clamps out-of-range samples and counts them") {
  AudioClip clip;
  clip.sample_rate_hz = 8000;
  clip.samples = Eigen::ArrayXd(3);
  clip.samples << 2.0, -3.0, 0.5;
  const auto path = (TempDir() / "clipped.wav").string();
  const WriteStats stats = WriteWav(path, clip);
  CHECK(stats.clipped == 2);
  const AudioClip back = ReadWav(path);
  CHECK(back.samples[0] == doctest::Approx(32767.0 / 32768.0));
  CHECK(back.samples[1] == -1.0);
}

TEST_CASE("writing an empty clip is an error") {
  AudioClip clip;
  clip.sample_rate_hz = 8000;
  CHECK_THROWS_AS(WriteWav((TempDir() / "empty.wav").string(), clip),
                  std::invalid_argument);
}

TEST_CASE("prepare pads to the stride grid and normalizes the peak") {
  const int filter_len = 1024;
  const int stride = 10;
  auto rng = MakeRng(52);

  SUBCASE("a filter-length clip is unchanged in length") {
    const Eigen::ArrayXd out =
        Prepare(RandomSignal(rng, filter_len), filter_len, stride);
    CHECK(out.size() == filter_len);
  }

  SUBCASE("one extra sample pads to the next stride multiple") {
    const Eigen::ArrayXd out =
        Prepare(RandomSignal(rng, filter_len + 1), filter_len, stride);
    CHECK(out.size() == filter_len + 10);
  }

  SUBCASE("peak is exactly one and prepare is idempotent") {
    const Eigen::ArrayXd out =
        Prepare(0.3 * RandomSignal(rng, 3000), filter_len, stride);
    CHECK(out.abs().maxCoeff() == 1.0);
    const Eigen::ArrayXd again = Prepare(out, filter_len, stride);
    CHECK(again.size() == out.size());
    CHECK((again == out).all());
  }

  SUBCASE("short clips are padded up to the filter length") {
    const Eigen::ArrayXd out =
        Prepare(RandomSignal(rng, 100), filter_len, stride);
    CHECK(out.size() == filter_len);
  }

  SUBCASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(Prepare(Eigen::ArrayXd(), filter_len, stride),
                    std::invalid_argument);
    CHECK_THROWS_AS(Prepare(Eigen::ArrayXd::Zero(64), filter_len, stride),
                    std::invalid_argument);
  }
}
