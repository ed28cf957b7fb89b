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

#ifndef SGRAM_PARAMS_IO_H_
#define SGRAM_PARAMS_IO_H_

#include <string>
#include <vector>

#include "sgram/adaptation.h"
#include "sgram/filterbank.h"

namespace sgram {

// Dictionaries are exchanged as parameter files, not raw samples, so filters
// are re-synthesized (and re-normalized) on load.
struct DictionaryFile {
  FilterbankConfig config;
  std::vector<ChannelParams> channels;
};

// Built-in presets, uniform across channels.
inline constexpr double kGammatoneChirp = 0.0;
inline constexpr double kGammatoneBandwidth = 1.0;
inline constexpr double kGammatoneOrder = 4.0;
inline constexpr double kCompressiveChirp = 0.979;
inline constexpr double kCompressiveBandwidth = 1.14;
inline constexpr double kCompressiveOrder = 4.0;

DictionaryFile MakePreset(const std::string& name,
                          const FilterbankConfig& config);

void WriteDictionaryJson(const std::string& path, const DictionaryFile& dict);
DictionaryFile ReadDictionaryJson(const std::string& path);

// One JSON object per line, one line per buffer flush.
void WriteTrainingLog(const std::string& path,
                      const std::vector<FlushRecord>& log);

}  // namespace sgram

#endif  // SGRAM_PARAMS_IO_H_
