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

#ifndef SGRAM_LCA_H_
#define SGRAM_LCA_H_

#include <Eigen/Core>
#include <iosfwd>
#include <vector>

#include "sgram/dictionary.h"

namespace sgram {

struct LcaConfig {
  double tau = 0.01;       // neuron time constant, seconds
  double dt = 0.0001;      // Euler step, seconds; requires 0 < dt < tau
  int num_iters = 64;
  double threshold = 0.1;  // lambda

  void Validate() const;
};

// 0 if |u| < lambda, else u. The boundary |u| == lambda is active.
inline double HardThreshold(double u, double lambda) {
  return (u < lambda && u > -lambda) ? 0.0 : u;
}

struct LcaState {
  Eigen::ArrayXd potentials;   // u
  Eigen::ArrayXd activations;  // a = HardThreshold(u)
};

LcaState MakeRestState(int num_atoms);

// One Euler step of the leaky competitive dynamics:
//   u <- (dt/tau) [p - (D^T D - I) a_prev] + (1 - dt/tau) u_prev
// followed by elementwise hard thresholding. The inhibition term is
// evaluated through the sparse Gram path.
LcaState LcaStep(const LcaState& state, const Eigen::ArrayXd& projection,
                 const StridedDictionary& dict, const GramTable& gram,
                 const LcaConfig& config);

// lambda^2 / 2 per active neuron: the hard-threshold sparsity cost that the
// energy function accumulates.
inline double SparsityCost(double lambda, int active_count) {
  return 0.5 * lambda * lambda * active_count;
}

struct EncodeResult {
  Eigen::ArrayXd coefficients;        // final activations
  int spike_count = 0;                // nonzero coefficients
  double mse = 0.0;                   // ||s_hat - s||^2 / T at the last iteration
  std::vector<double> energy_trace;   // E per iteration
  std::vector<double> mse_trace;
  std::vector<int> spike_trace;
};

// Per-iteration history retained for backpropagation through the unrolled
// dynamics.
struct EncodeTrace {
  Eigen::ArrayXd projection;            // p = D^T s
  std::vector<SparseCode> activations;  // a_t, t = 1..num_iters
  Eigen::ArrayXd final_potentials;      // u at the last iteration
};

// Runs num_iters steps from rest, recording energy and MSE each iteration.
// Throws DivergenceError naming the iteration if potentials go non-finite.
EncodeResult Encode(const Eigen::ArrayXd& signal,
                    const StridedDictionary& dict, const GramTable& gram,
                    const LcaConfig& config, EncodeTrace* trace = nullptr);

struct Spike {
  int channel = 0;
  int time_index = 0;  // shift * stride, in samples
  double amplitude = 0.0;
};

// One spike per nonzero coefficient, sorted by (channel, time).
std::vector<Spike> ExtractSpikegram(const EncodeResult& result,
                                    const StridedDictionary& dict);

// CSV with header "channel,time_index,amplitude".
void WriteSpikegramCsv(std::ostream& out, const std::vector<Spike>& spikes);

}  // namespace sgram

#endif  // SGRAM_LCA_H_
