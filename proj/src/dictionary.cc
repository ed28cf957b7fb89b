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

#include "sgram/dictionary.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace sgram {

StridedDictionary BuildDictionary(FilterSet filters, int stride,
                                  int signal_len) {
  if (filters.num_channels() < 1) {
    throw std::invalid_argument("BuildDictionary: empty filter set");
  }
  const int filter_len = filters.filter_len();
  if (stride < 1 || stride > filter_len) {
    throw std::invalid_argument("BuildDictionary: bad stride");
  }
  if (signal_len < filter_len) {
    throw std::invalid_argument(
        "BuildDictionary: signal shorter than filter_len; pad first");
  }
  StridedDictionary dict;
  dict.filters = std::move(filters);
  dict.stride = stride;
  dict.signal_len = signal_len;
  dict.shifts_per_channel = (signal_len - filter_len) / stride + 1;
  return dict;
}

SparseCode Sparsify(const Eigen::ArrayXd& coeffs) {
  SparseCode code;
  for (int m = 0; m < coeffs.size(); ++m) {
    if (coeffs[m] != 0.0) code.push(m, coeffs[m]);
  }
  return code;
}

Eigen::ArrayXd StridedCorrelate(const std::vector<Eigen::ArrayXd>& filters,
                                int stride, int shifts_per_channel,
                                const Eigen::ArrayXd& signal) {
  const int k = static_cast<int>(filters.size());
  const int flen = static_cast<int>(filters.front().size());
  Eigen::ArrayXd out(static_cast<Eigen::Index>(k) * shifts_per_channel);
  for (int i = 0; i < k; ++i) {
    const auto filter = filters[i].matrix();
    double* out_ch = out.data() + static_cast<size_t>(i) * shifts_per_channel;
    for (int j = 0; j < shifts_per_channel; ++j) {
      out_ch[j] = filter.dot(signal.segment(j * stride, flen).matrix());
    }
  }
  return out;
}

Eigen::ArrayXd Analyze(const StridedDictionary& dict,
                       const Eigen::ArrayXd& signal) {
  if (signal.size() != dict.signal_len) {
    throw std::invalid_argument("Analyze: signal length mismatch");
  }
  return StridedCorrelate(dict.filters.impulse_responses, dict.stride,
                          dict.shifts_per_channel, signal);
}

Eigen::ArrayXd SynthesizeSignal(const StridedDictionary& dict,
                                const Eigen::ArrayXd& coeffs) {
  if (coeffs.size() != dict.num_atoms()) {
    throw std::invalid_argument("SynthesizeSignal: coefficient length mismatch");
  }
  return SynthesizeSparse(dict, Sparsify(coeffs));
}

Eigen::ArrayXd SynthesizeSparse(const StridedDictionary& dict,
                                const SparseCode& active) {
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(dict.signal_len);
  const int flen = dict.filter_len();
  for (size_t n = 0; n < active.size(); ++n) {
    const int m = active.indices[n];
    if (m < 0 || m >= dict.num_atoms()) {
      throw std::out_of_range("SynthesizeSparse: coefficient index out of range");
    }
    const int channel = dict.ChannelOf(m);
    const int offset = dict.ShiftOf(m) * dict.stride;
    out.segment(offset, flen) +=
        active.values[n] * dict.filters.impulse_responses[channel];
  }
  return out;
}

GramTable ComputeCrossGram(const std::vector<Eigen::ArrayXd>& left,
                           const std::vector<Eigen::ArrayXd>& right,
                           int stride) {
  const int k = static_cast<int>(left.size());
  if (right.size() != left.size()) {
    throw std::invalid_argument("ComputeCrossGram: channel count mismatch");
  }
  const int flen = static_cast<int>(left.front().size());
  GramTable table;
  table.num_channels = k;
  table.lag_radius = (flen + stride - 1) / stride - 1;
  const int lags = table.lags();
  table.cross_corr.assign(static_cast<size_t>(k) * k * lags, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double* row = table.cross_corr.data() +
                    (static_cast<size_t>(i) * k + j) * lags + table.lag_radius;
      for (int d = -table.lag_radius; d <= table.lag_radius; ++d) {
        // sum_n left[i][n] * right[j][n + d * stride] over the overlap.
        const int offset = d * stride;
        const int len = flen - std::abs(offset);
        if (offset >= 0) {
          row[d] = left[i].segment(0, len).matrix().dot(
              right[j].segment(offset, len).matrix());
        } else {
          row[d] = left[i].segment(-offset, len).matrix().dot(
              right[j].segment(0, len).matrix());
        }
      }
    }
  }
  return table;
}

GramTable ComputeGram(const StridedDictionary& dict) {
  return ComputeCrossGram(dict.filters.impulse_responses,
                          dict.filters.impulse_responses, dict.stride);
}

Eigen::ArrayXd Inhibit(const StridedDictionary& dict, const GramTable& gram,
                       const SparseCode& active) {
  const int k = dict.num_channels();
  const int shifts = dict.shifts_per_channel;
  const int radius = gram.lag_radius;
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(dict.num_atoms());
  for (size_t n = 0; n < active.size(); ++n) {
    const int m = active.indices[n];
    if (m < 0 || m >= dict.num_atoms()) {
      throw std::out_of_range("Inhibit: active index out of range");
    }
    const double value = active.values[n];
    const int channel = dict.ChannelOf(m);
    const int shift = dict.ShiftOf(m);
    // <atom(i2, shift + d), atom(channel, shift)> = At(i2, channel, d).
    const int d_lo = std::max(-radius, -shift);
    const int d_hi = std::min(radius, shifts - 1 - shift);
    for (int i2 = 0; i2 < k; ++i2) {
      const double* row = gram.LagRow(i2, channel);
      double* out_ch = out.data() + static_cast<size_t>(i2) * shifts;
      for (int d = d_lo; d <= d_hi; ++d) {
        out_ch[shift + d] += value * row[d];
      }
    }
  }
  // Remove the unit self-term: (D^T D - I) a.
  for (size_t n = 0; n < active.size(); ++n) {
    out[active.indices[n]] -= active.values[n];
  }
  return out;
}

}  // namespace sgram
