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

#include "sgram/lca.h"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "sgram/errors.h"

namespace sgram {

void LcaConfig::Validate() const {
  if (!(dt > 0.0) || !(dt < tau)) {
    throw std::invalid_argument("LcaConfig: need 0 < dt < tau");
  }
  if (num_iters < 1) {
    throw std::invalid_argument("LcaConfig: num_iters must be >= 1");
  }
  if (!(threshold >= 0.0)) {
    throw std::invalid_argument("LcaConfig: threshold must be >= 0");
  }
}

LcaState MakeRestState(int num_atoms) {
  LcaState state;
  state.potentials = Eigen::ArrayXd::Zero(num_atoms);
  state.activations = Eigen::ArrayXd::Zero(num_atoms);
  return state;
}

namespace {

// Advances potentials one Euler step and rebuilds activations plus the
// active set in one pass.
void StepImpl(const Eigen::ArrayXd& projection, const SparseCode& active_prev,
              const StridedDictionary& dict, const GramTable& gram,
              const LcaConfig& config, Eigen::ArrayXd* potentials,
              Eigen::ArrayXd* activations, SparseCode* active_out) {
  const double beta = config.dt / config.tau;
  const Eigen::ArrayXd inhibition = Inhibit(dict, gram, active_prev);
  *potentials = beta * (projection - inhibition) + (1.0 - beta) * *potentials;
  const double lambda = config.threshold;
  const int n = static_cast<int>(potentials->size());
  activations->resize(n);
  active_out->clear();
  for (int m = 0; m < n; ++m) {
    const double a = HardThreshold((*potentials)[m], lambda);
    (*activations)[m] = a;
    if (a != 0.0) active_out->push(m, a);
  }
}

}  // namespace

LcaState LcaStep(const LcaState& state, const Eigen::ArrayXd& projection,
                 const StridedDictionary& dict, const GramTable& gram,
                 const LcaConfig& config) {
  config.Validate();
  if (state.potentials.size() != dict.num_atoms() ||
      projection.size() != dict.num_atoms()) {
    throw std::invalid_argument("LcaStep: dimension mismatch");
  }
  LcaState next;
  next.potentials = state.potentials;
  SparseCode active;
  StepImpl(projection, Sparsify(state.activations), dict, gram, config,
           &next.potentials, &next.activations, &active);
  return next;
}

EncodeResult Encode(const Eigen::ArrayXd& signal,
                    const StridedDictionary& dict, const GramTable& gram,
                    const LcaConfig& config, EncodeTrace* trace) {
  config.Validate();
  if (signal.size() != dict.signal_len) {
    throw std::invalid_argument("Encode: signal length mismatch");
  }
  const int num_atoms = dict.num_atoms();
  const double lambda = config.threshold;

  Eigen::ArrayXd projection = Analyze(dict, signal);
  Eigen::ArrayXd potentials = Eigen::ArrayXd::Zero(num_atoms);
  Eigen::ArrayXd activations = Eigen::ArrayXd::Zero(num_atoms);
  SparseCode active;

  EncodeResult result;
  result.energy_trace.reserve(config.num_iters);
  result.mse_trace.reserve(config.num_iters);
  result.spike_trace.reserve(config.num_iters);
  if (trace != nullptr) {
    trace->projection = projection;
    trace->activations.clear();
    trace->activations.reserve(config.num_iters);
  }

  for (int iter = 0; iter < config.num_iters; ++iter) {
    SparseCode next_active;
    StepImpl(projection, active, dict, gram, config, &potentials, &activations,
             &next_active);
    active = std::move(next_active);
    if (!potentials.allFinite()) {
      throw DivergenceError("Encode: non-finite potentials at iteration " +
                            std::to_string(iter + 1));
    }
    const Eigen::ArrayXd residual = SynthesizeSparse(dict, active) - signal;
    const double err = (residual * residual).sum();
    result.mse_trace.push_back(err / dict.signal_len);
    result.energy_trace.push_back(
        0.5 * err + SparsityCost(lambda, static_cast<int>(active.size())));
    result.spike_trace.push_back(static_cast<int>(active.size()));
    if (trace != nullptr) trace->activations.push_back(active);
  }

  result.coefficients = activations;
  result.spike_count = static_cast<int>(active.size());
  result.mse = result.mse_trace.back();
  if (trace != nullptr) trace->final_potentials = potentials;
  return result;
}

std::vector<Spike> ExtractSpikegram(const EncodeResult& result,
                                    const StridedDictionary& dict) {
  std::vector<Spike> spikes;
  spikes.reserve(result.spike_count);
  // Channel-major flat layout makes the scan already (channel, time) sorted.
  for (int m = 0; m < result.coefficients.size(); ++m) {
    const double a = result.coefficients[m];
    if (a != 0.0) {
      spikes.push_back(
          Spike{dict.ChannelOf(m), dict.ShiftOf(m) * dict.stride, a});
    }
  }
  return spikes;
}

void WriteSpikegramCsv(std::ostream& out, const std::vector<Spike>& spikes) {
  out << "channel,time_index,amplitude\n";
  char buf[64];
  for (const Spike& s : spikes) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.17g\n", s.channel, s.time_index,
                  s.amplitude);
    out << buf;
  }
}

}  // namespace sgram
