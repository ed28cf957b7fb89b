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

#include "sgram/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "sgram/audio_io.h"
#include "sgram/parallel.h"

namespace sgram {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Quantile by linear interpolation between order statistics.
double Quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * (sorted.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - lo;
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

BoxStats ComputeBoxStats(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("ComputeBoxStats: empty input");
  }
  std::sort(values.begin(), values.end());
  BoxStats stats;
  stats.n = static_cast<int>(values.size());
  stats.median = Quantile(values, 0.5);
  stats.q1 = Quantile(values, 0.25);
  stats.q3 = Quantile(values, 0.75);
  // Whiskers are the lowest and highest data points.
  stats.lo_whisker = values.front();
  stats.hi_whisker = values.back();
  return stats;
}

FilterResponse ComputeMagnitudeResponse(const FilterSet& filters,
                                        double sample_rate_hz, int grid_size,
                                        double grid_min_hz) {
  if (grid_size < 2) {
    throw std::invalid_argument("ComputeMagnitudeResponse: grid_size < 2");
  }
  const double nyquist = sample_rate_hz / 2.0;
  if (!(grid_min_hz > 0.0) || !(grid_min_hz < nyquist)) {
    throw std::invalid_argument("ComputeMagnitudeResponse: bad grid_min_hz");
  }
  FilterResponse response;
  response.freqs_hz.resize(grid_size);
  const double log_lo = std::log(grid_min_hz);
  const double log_hi = std::log(nyquist);
  for (int g = 0; g < grid_size; ++g) {
    response.freqs_hz[g] =
        std::exp(log_lo + (log_hi - log_lo) * g / (grid_size - 1));
  }
  const int k = filters.num_channels();
  const int flen = filters.filter_len();
  response.magnitude_db.reserve(k);
  for (int i = 0; i < k; ++i) {
    Eigen::ArrayXd mag_db(grid_size);
    const Eigen::ArrayXd& h = filters.impulse_responses[i];
    for (int g = 0; g < grid_size; ++g) {
      // Direct DTFT sample: equivalent to an arbitrarily zero-padded DFT bin.
      const double w = kTwoPi * response.freqs_hz[g] / sample_rate_hz;
      double re = 0.0, im = 0.0;
      for (int t = 0; t < flen; ++t) {
        re += h[t] * std::cos(w * t);
        im -= h[t] * std::sin(w * t);
      }
      const double mag = std::sqrt(re * re + im * im);
      mag_db[g] = 20.0 * std::log10(std::max(mag, 1e-150));
    }
    response.magnitude_db.push_back(std::move(mag_db));
  }
  return response;
}

Eigen::MatrixXd InhibitionMatrix(const GramTable& gram) {
  const int k = gram.num_channels;
  Eigen::MatrixXd matrix = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < i; ++j) {
      double peak = 0.0;
      const double* row = gram.LagRow(i, j);
      for (int d = -gram.lag_radius; d <= gram.lag_radius; ++d) {
        peak = std::max(peak, std::abs(row[d]));
      }
      matrix(i, j) = peak;
      matrix(j, i) = peak;
    }
  }
  return matrix;
}

CorpusEvaluation EvaluateCorpus(
    const std::vector<NamedDictionary>& dicts, const FilterbankConfig& config,
    const std::vector<std::pair<std::string, Eigen::ArrayXd>>& clips,
    const LcaConfig& lca_config, int threads) {
  if (dicts.empty() || clips.empty()) {
    throw std::invalid_argument("EvaluateCorpus: need >= 1 clip and dictionary");
  }
  config.Validate();
  lca_config.Validate();

  struct PreparedDict {
    FilterSet filters;
    GramTable gram;
  };
  std::vector<PreparedDict> prepared_dicts;
  prepared_dicts.reserve(dicts.size());
  for (const NamedDictionary& d : dicts) {
    PreparedDict pd;
    pd.filters = MakeFilterSet(d.params, config);
    pd.gram = ComputeCrossGram(pd.filters.impulse_responses,
                               pd.filters.impulse_responses, config.stride);
    prepared_dicts.push_back(std::move(pd));
  }

  const int num_clips = static_cast<int>(clips.size());
  const int num_dicts = static_cast<int>(dicts.size());
  std::vector<ClipEvalRecord> records(
      static_cast<size_t>(num_clips) * num_dicts);

  ParallelFor(num_clips, threads, [&](int c) {
    Eigen::ArrayXd signal;
    std::string prep_error;
    try {
      signal = Prepare(clips[c].second, config.filter_len, config.stride);
    } catch (const std::exception& e) {
      prep_error = e.what();
    }
    for (int d = 0; d < num_dicts; ++d) {
      ClipEvalRecord& rec = records[static_cast<size_t>(c) * num_dicts + d];
      rec.clip = clips[c].first;
      rec.dict = dicts[d].name;
      if (!prep_error.empty()) {
        rec.ok = false;
        rec.error = prep_error;
        continue;
      }
      try {
        StridedDictionary dict =
            BuildDictionary(prepared_dicts[d].filters, config.stride,
                            static_cast<int>(signal.size()));
        EncodeResult enc =
            Encode(signal, dict, prepared_dicts[d].gram, lca_config);
        rec.mse = enc.mse;
        rec.spikes = enc.spike_count;
        rec.final_energy = enc.energy_trace.back();
      } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
      }
    }
  });

  CorpusEvaluation eval;
  eval.records = std::move(records);
  for (int d = 0; d < num_dicts; ++d) {
    DictionarySummary summary;
    summary.name = dicts[d].name;
    std::vector<double> mses, spikes;
    for (int c = 0; c < num_clips; ++c) {
      const ClipEvalRecord& rec =
          eval.records[static_cast<size_t>(c) * num_dicts + d];
      if (!rec.ok) {
        ++summary.failures;
        continue;
      }
      mses.push_back(rec.mse);
      spikes.push_back(rec.spikes);
    }
    summary.n = static_cast<int>(mses.size());
    if (summary.n > 0) {
      summary.mse = ComputeBoxStats(mses);
      summary.spikes = ComputeBoxStats(spikes);
    }
    eval.summaries.push_back(std::move(summary));
  }
  return eval;
}

void WriteEvalCsv(std::ostream& out, const CorpusEvaluation& eval) {
  out << "clip,dict,mse,spikes,final_energy\n";
  for (const ClipEvalRecord& rec : eval.records) {
    if (!rec.ok) continue;
    out << rec.clip << ',' << rec.dict << ',' << FormatDouble(rec.mse) << ','
        << rec.spikes << ',' << FormatDouble(rec.final_energy) << '\n';
  }
}

namespace {

nlohmann::json BoxStatsJson(const BoxStats& stats) {
  return nlohmann::json{{"median", stats.median},   {"q1", stats.q1},
                        {"q3", stats.q3},           {"lo_whisker", stats.lo_whisker},
                        {"hi_whisker", stats.hi_whisker}, {"n", stats.n}};
}

}  // namespace

void WriteEvalSummaryJson(std::ostream& out, const CorpusEvaluation& eval) {
  nlohmann::json dicts = nlohmann::json::object();
  for (const DictionarySummary& s : eval.summaries) {
    dicts[s.name] = nlohmann::json{{"mse", BoxStatsJson(s.mse)},
                                   {"spikes", BoxStatsJson(s.spikes)},
                                   {"n", s.n},
                                   {"failures", s.failures}};
  }
  out << nlohmann::json{{"dicts", dicts}}.dump(2) << '\n';
}

void WriteTraceCsv(std::ostream& out, const EncodeResult& result) {
  out << "iter,mse,spikes,energy\n";
  for (size_t i = 0; i < result.mse_trace.size(); ++i) {
    out << i << ',' << FormatDouble(result.mse_trace[i]) << ','
        << result.spike_trace[i] << ',' << FormatDouble(result.energy_trace[i])
        << '\n';
  }
}

void WriteResponseCsv(std::ostream& out, const FilterResponse& response) {
  const int k = static_cast<int>(response.magnitude_db.size());
  out << "freq_hz";
  for (int i = 0; i < k; ++i) out << ",ch" << i;
  out << '\n';
  for (int g = 0; g < response.freqs_hz.size(); ++g) {
    out << FormatDouble(response.freqs_hz[g]);
    for (int i = 0; i < k; ++i) {
      out << ',' << FormatDouble(response.magnitude_db[i][g]);
    }
    out << '\n';
  }
}

void WriteMatrixCsv(std::ostream& out, const Eigen::MatrixXd& matrix) {
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (c > 0) out << ',';
      out << FormatDouble(matrix(r, c));
    }
    out << '\n';
  }
}

}  // namespace sgram
