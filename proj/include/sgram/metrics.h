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

#ifndef SGRAM_METRICS_H_
#define SGRAM_METRICS_H_

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sgram/dictionary.h"
#include "sgram/lca.h"

namespace sgram {

// Five-number summary with linear-interpolation quartiles. Whiskers are the
// data extrema, not 1.5 IQR fences.
struct BoxStats {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double lo_whisker = 0.0;
  double hi_whisker = 0.0;
  int n = 0;
};

BoxStats ComputeBoxStats(std::vector<double> values);

struct FilterResponse {
  Eigen::ArrayXd freqs_hz;                    // log-spaced grid
  std::vector<Eigen::ArrayXd> magnitude_db;   // per channel, 20 log10 |H|
};

// DFT magnitude of each impulse response evaluated on a log-spaced frequency
// grid from grid_min_hz to sample_rate / 2.
FilterResponse ComputeMagnitudeResponse(const FilterSet& filters,
                                        double sample_rate_hz, int grid_size,
                                        double grid_min_hz = 50.0);

// Channel-level summary of lateral-inhibition strength: entry (i, j) is the
// largest |cross-correlation| between channels i and j over all lags, with
// the diagonal excluded (zero). Symmetric.
Eigen::MatrixXd InhibitionMatrix(const GramTable& gram);

struct NamedDictionary {
  std::string name;
  std::vector<ChannelParams> params;
};

struct ClipEvalRecord {
  std::string clip;
  std::string dict;
  double mse = 0.0;
  int spikes = 0;
  double final_energy = 0.0;
  bool ok = true;
  std::string error;
};

struct DictionarySummary {
  std::string name;
  BoxStats mse;
  BoxStats spikes;
  int n = 0;         // clips included in the stats
  int failures = 0;  // clips excluded because encode failed
};

struct CorpusEvaluation {
  std::vector<ClipEvalRecord> records;     // clip-major, dictionary order
  std::vector<DictionarySummary> summaries;
};

// Encodes every clip with every dictionary and aggregates per-dictionary
// BoxStats for MSE and spike count. Clips are peak-normalized and padded
// before encoding; encode failures are recorded and excluded from the stats.
// Parallelizes over clips; output is independent of thread count.
CorpusEvaluation EvaluateCorpus(
    const std::vector<NamedDictionary>& dicts, const FilterbankConfig& config,
    const std::vector<std::pair<std::string, Eigen::ArrayXd>>& clips,
    const LcaConfig& lca_config, int threads = 1);

// "clip,dict,mse,spikes,final_energy", one row per clip-dictionary pair.
void WriteEvalCsv(std::ostream& out, const CorpusEvaluation& eval);

// Per-dictionary BoxStats for both metrics.
void WriteEvalSummaryJson(std::ostream& out, const CorpusEvaluation& eval);

// "iter,mse,spikes,energy" per iteration of one encode.
void WriteTraceCsv(std::ostream& out, const EncodeResult& result);

void WriteResponseCsv(std::ostream& out, const FilterResponse& response);
void WriteMatrixCsv(std::ostream& out, const Eigen::MatrixXd& matrix);

}  // namespace sgram

#endif  // SGRAM_METRICS_H_
