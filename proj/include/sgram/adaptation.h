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

#ifndef SGRAM_ADAPTATION_H_
#define SGRAM_ADAPTATION_H_

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sgram/dictionary.h"
#include "sgram/lca.h"

namespace sgram {

struct TrainConfig {
  double learning_rate = 0.0002;
  int batch_size = 8;    // signals encoded between buffer pushes
  int num_epochs = 10;
  int buffer_size = 8;   // losses stacked before one backward + update
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t rng_seed = 0;
  int threads = 1;       // forward encodes within a batch

  void Validate() const;
};

// Indices into the per-channel learnable triple.
enum ParamKind { kChirp = 0, kBandwidth = 1, kOrder = 2 };
inline const char* ParamKindName(int kind) {
  constexpr const char* kNames[] = {"chirp", "bandwidth_scale", "order"};
  return kNames[kind];
}

struct ParamGradients {
  Eigen::ArrayXd d_chirp;      // dE/dc_i
  Eigen::ArrayXd d_bandwidth;  // dE/db_i
  Eigen::ArrayXd d_order;      // dE/dl_i

  Eigen::ArrayXd& of(int kind) {
    return kind == kChirp ? d_chirp
                          : (kind == kBandwidth ? d_bandwidth : d_order);
  }
  const Eigen::ArrayXd& of(int kind) const {
    return kind == kChirp ? d_chirp
                          : (kind == kBandwidth ? d_bandwidth : d_order);
  }
};

ParamGradients ZeroGradients(int num_channels);

// Derivative filters (partials of the normalized impulse responses) together
// with their correlation tables against the dictionary filters:
//   cross[kind].At(i, j, d) = sum_n filter_i[n] * deriv_j[kind][n + d*stride]
struct DerivativeSet {
  std::array<std::vector<Eigen::ArrayXd>, 3> filters;
  std::array<GramTable, 3> cross;
};

DerivativeSet BuildDerivativeSet(const std::vector<ChannelParams>& params,
                                 const FilterbankConfig& config,
                                 const FilterSet& filters);

// E = 1/2 ||D a - s||^2 + lambda^2/2 * nnz(a).
double Loss(const Eigen::ArrayXd& signal, const Eigen::ArrayXd& coefficients,
            const StridedDictionary& dict, double lambda);

// Reverse-mode gradients through the unrolled dynamics, split by energy
// term. The reconstruction path chains the hard threshold exactly (its
// active-set masks), so it matches finite differences of the reconstruction
// term. The sparsity path seeds the final potentials directly with the
// surviving cost gradient (u where inactive, 0 where active), bypassing the
// threshold derivative that would otherwise cancel it.
struct BackwardResult {
  ParamGradients reconstruction;
  ParamGradients sparsity;
  ParamGradients Total() const;
};

BackwardResult BackwardParts(const Eigen::ArrayXd& signal,
                             const EncodeTrace& trace,
                             const StridedDictionary& dict,
                             const GramTable& gram,
                             const DerivativeSet& derivs,
                             const LcaConfig& config);

// Sum of both paths, computed in a single adjoint sweep. Throws
// DivergenceError naming channel and parameter if a gradient is non-finite.
ParamGradients Backward(const Eigen::ArrayXd& signal, const EncodeTrace& trace,
                        const StridedDictionary& dict, const GramTable& gram,
                        const DerivativeSet& derivs, const LcaConfig& config);

struct AdamState {
  std::array<Eigen::ArrayXd, 3> first_moment;
  std::array<Eigen::ArrayXd, 3> second_moment;
  long step_count = 0;
};

AdamState MakeAdamState(int num_channels);

struct AdamUpdateResult {
  std::vector<ChannelParams> params;
  int clamped = 0;  // parameters pushed back inside their safe range
};

// Bias-corrected Adam step over all channels' (c, b, l). Order is clamped to
// stay >= 1.05 and bandwidth_scale >= 0.02; clamps are counted.
AdamUpdateResult AdamUpdate(const std::vector<ChannelParams>& params,
                            const ParamGradients& grads, AdamState& state,
                            const TrainConfig& config);

struct FlushRecord {
  int flush_index = 0;
  double mean_loss = 0.0;
  double mean_mse = 0.0;
  double mean_spikes = 0.0;
  std::vector<ChannelParams> params;  // after the update
};

struct TrainResult {
  std::vector<ChannelParams> params;
  std::vector<FlushRecord> log;
  AdamState adam;
  int skipped_signals = 0;
  int clamped_params = 0;
  std::vector<std::string> warnings;
};

// Buffered truncated BPTT: signals are encoded forward (traces retained)
// and their losses stacked; when buffer_size losses have accumulated, all of
// them are backpropagated, gradients averaged, and one Adam update fires.
// Gradients flow through every LCA iteration of a signal but never across
// signals. Signals are peak-normalized and padded on ingestion; encodes that
// diverge are skipped with a warning, and a batch with no usable signal is
// an error.
TrainResult Train(const std::vector<Eigen::ArrayXd>& dataset,
                  const std::vector<ChannelParams>& initial_params,
                  const FilterbankConfig& fb_config, const LcaConfig& lca_config,
                  const TrainConfig& train_config);

// Deterministic mixture signals: hyperbolically gliding tones, damped
// harmonic bursts and a low tone-cloud noise floor, peak-normalized, with
// all content kept well below the Nyquist frequency.
std::vector<Eigen::ArrayXd> MakeSyntheticCorpus(int count, std::uint64_t seed,
                                                double sample_rate_hz,
                                                double duration_s);

}  // namespace sgram

#endif  // SGRAM_ADAPTATION_H_
