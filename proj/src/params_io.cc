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

#include "sgram/params_io.h"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sgram/errors.h"

namespace sgram {

DictionaryFile MakePreset(const std::string& name,
                          const FilterbankConfig& config) {
  DictionaryFile dict;
  dict.config = config;
  if (name == "gt") {
    dict.channels = MakeUniformParams(config, kGammatoneOrder,
                                      kGammatoneBandwidth, kGammatoneChirp);
  } else if (name == "cgc") {
    dict.channels = MakeUniformParams(config, kCompressiveOrder,
                                      kCompressiveBandwidth, kCompressiveChirp);
  } else {
    throw std::invalid_argument("unknown dictionary preset: " + name);
  }
  return dict;
}

void WriteDictionaryJson(const std::string& path, const DictionaryFile& dict) {
  nlohmann::json channels = nlohmann::json::array();
  for (const ChannelParams& p : dict.channels) {
    channels.push_back({{"center_freq_hz", p.center_freq_hz},
                        {"order", p.order},
                        {"bandwidth_scale", p.bandwidth_scale},
                        {"chirp", p.chirp}});
  }
  nlohmann::json root{
      {"config",
       {{"num_channels", dict.config.num_channels},
        {"filter_len", dict.config.filter_len},
        {"stride", dict.config.stride},
        {"sample_rate_hz", dict.config.sample_rate_hz},
        {"freq_min_hz", dict.config.freq_min_hz},
        {"freq_max_hz", dict.config.freq_max_hz}}},
      {"channels", channels}};
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << root.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

DictionaryFile ReadDictionaryJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": invalid JSON: " + e.what());
  }
  DictionaryFile dict;
  try {
    const auto& cfg = root.at("config");
    dict.config.num_channels = cfg.at("num_channels").get<int>();
    dict.config.filter_len = cfg.at("filter_len").get<int>();
    dict.config.stride = cfg.at("stride").get<int>();
    dict.config.sample_rate_hz = cfg.at("sample_rate_hz").get<double>();
    dict.config.freq_min_hz = cfg.at("freq_min_hz").get<double>();
    dict.config.freq_max_hz = cfg.at("freq_max_hz").get<double>();
    for (const auto& ch : root.at("channels")) {
      ChannelParams p;
      p.center_freq_hz = ch.at("center_freq_hz").get<double>();
      p.order = ch.at("order").get<double>();
      p.bandwidth_scale = ch.at("bandwidth_scale").get<double>();
      p.chirp = ch.at("chirp").get<double>();
      dict.channels.push_back(p);
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": bad dictionary file: " + e.what());
  }
  dict.config.Validate();
  if (static_cast<int>(dict.channels.size()) != dict.config.num_channels) {
    throw IoError(path + ": channel count does not match config");
  }
  return dict;
}

void WriteTrainingLog(const std::string& path,
                      const std::vector<FlushRecord>& log) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (const FlushRecord& rec : log) {
    nlohmann::json params = nlohmann::json::array();
    for (const ChannelParams& p : rec.params) {
      params.push_back({{"f", p.center_freq_hz},
                        {"l", p.order},
                        {"b", p.bandwidth_scale},
                        {"c", p.chirp}});
    }
    nlohmann::json line{{"flush_index", rec.flush_index},
                        {"mean_loss", rec.mean_loss},
                        {"mean_mse", rec.mean_mse},
                        {"mean_spikes", rec.mean_spikes},
                        {"params", params}};
    out << line.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace sgram
