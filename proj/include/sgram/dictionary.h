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

#ifndef SGRAM_DICTIONARY_H_
#define SGRAM_DICTIONARY_H_

#include <Eigen/Core>
#include <vector>

#include "sgram/filterbank.h"

namespace sgram {

// Implicit shift-invariant dictionary: every atom is one filter placed at a
// stride-multiple offset. The dense matrix is never materialized; all
// operators work on the filters directly. Immutable after construction and
// safe to share across threads.
//
// Atom (channel i, shift j) lives at flat index i * shifts_per_channel + j
// and covers samples [j * stride, j * stride + filter_len).
struct StridedDictionary {
  FilterSet filters;
  int stride = 1;
  int signal_len = 0;          // T
  int shifts_per_channel = 0;  // M = floor((T - filter_len) / stride) + 1

  int num_channels() const { return filters.num_channels(); }
  int filter_len() const { return filters.filter_len(); }
  int num_atoms() const { return num_channels() * shifts_per_channel; }

  int FlatIndex(int channel, int shift) const {
    return channel * shifts_per_channel + shift;
  }
  int ChannelOf(int flat) const { return flat / shifts_per_channel; }
  int ShiftOf(int flat) const { return flat % shifts_per_channel; }
};

// Throws std::invalid_argument when signal_len < filter_len (callers pad).
StridedDictionary BuildDictionary(FilterSet filters, int stride,
                                  int signal_len);

// Nonzero coefficients of a code vector, in increasing flat-index order.
struct SparseCode {
  std::vector<int> indices;
  std::vector<double> values;

  size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  void clear() {
    indices.clear();
    values.clear();
  }
  void push(int index, double value) {
    indices.push_back(index);
    values.push_back(value);
  }
};

SparseCode Sparsify(const Eigen::ArrayXd& coeffs);

// p = D^T s: correlation of every filter against the signal at every
// stride-multiple shift.
Eigen::ArrayXd Analyze(const StridedDictionary& dict,
                       const Eigen::ArrayXd& signal);

// s_hat = D a: overlap-add of filters scaled by their coefficients.
Eigen::ArrayXd SynthesizeSignal(const StridedDictionary& dict,
                                const Eigen::ArrayXd& coeffs);
Eigen::ArrayXd SynthesizeSparse(const StridedDictionary& dict,
                                const SparseCode& active);

// Generic strided correlation used by Analyze and by gradient projections:
// out[i * shifts + j] = <filters[i], signal[j * stride ..]>.
Eigen::ArrayXd StridedCorrelate(const std::vector<Eigen::ArrayXd>& filters,
                                int stride, int shifts_per_channel,
                                const Eigen::ArrayXd& signal);

// Lag-structured storage of all filter-pair correlations at stride-multiple
// lags. For the self Gram of a dictionary this is exactly D^T D:
//   <atom(i', j'), atom(i, j)> = At(i', i, j' - j).
// Entries beyond lag_radius have no overlap and are structurally zero.
struct GramTable {
  int num_channels = 0;
  int lag_radius = 0;                 // ceil(filter_len / stride) - 1
  std::vector<double> cross_corr;     // [(i * k + j) * lags + lag + radius]

  int lags() const { return 2 * lag_radius + 1; }
  const double* LagRow(int i, int j) const {
    return cross_corr.data() +
           static_cast<size_t>(i * num_channels + j) * lags() + lag_radius;
  }
  double At(int i, int j, int lag) const {
    if (lag < -lag_radius || lag > lag_radius) return 0.0;
    return LagRow(i, j)[lag];
  }
};

GramTable ComputeGram(const StridedDictionary& dict);

// cross_corr[i][j][d] = sum_n left[i][n] * right[j][n + d * stride].
// Not symmetric unless left == right.
GramTable ComputeCrossGram(const std::vector<Eigen::ArrayXd>& left,
                           const std::vector<Eigen::ArrayXd>& right,
                           int stride);

// (D^T D - I) a for a sparse a, touching only active entries and their
// lag-window neighbors. Cost O(|active| * k * lags), independent of T.
Eigen::ArrayXd Inhibit(const StridedDictionary& dict, const GramTable& gram,
                       const SparseCode& active);

}  // namespace sgram

#endif  // SGRAM_DICTIONARY_H_
