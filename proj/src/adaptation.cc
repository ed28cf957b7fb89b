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

#include "sgram/adaptation.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>

#include "sgram/audio_io.h"
#include "sgram/errors.h"
#include "sgram/parallel.h"

namespace sgram {

void TrainConfig::Validate() const {
  if (!(learning_rate >= 0.0)) {
    throw std::invalid_argument("TrainConfig: learning_rate must be >= 0");
  }
  if (batch_size < 1 || buffer_size < 1) {
    throw std::invalid_argument(
        "TrainConfig: batch_size and buffer_size must be >= 1");
  }
  if (num_epochs < 0) {
    throw std::invalid_argument("TrainConfig: num_epochs must be >= 0");
  }
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) ||
      !(adam_beta2 >= 0.0 && adam_beta2 < 1.0) || !(adam_eps > 0.0)) {
    throw std::invalid_argument("TrainConfig: bad Adam constants");
  }
  if (threads < 1) {
    throw std::invalid_argument("TrainConfig: threads must be >= 1");
  }
}

ParamGradients ZeroGradients(int num_channels) {
  ParamGradients g;
  g.d_chirp = Eigen::ArrayXd::Zero(num_channels);
  g.d_bandwidth = Eigen::ArrayXd::Zero(num_channels);
  g.d_order = Eigen::ArrayXd::Zero(num_channels);
  return g;
}

ParamGradients BackwardResult::Total() const {
  ParamGradients total = reconstruction;
  total.d_chirp += sparsity.d_chirp;
  total.d_bandwidth += sparsity.d_bandwidth;
  total.d_order += sparsity.d_order;
  return total;
}

DerivativeSet BuildDerivativeSet(const std::vector<ChannelParams>& params,
                                 const FilterbankConfig& config,
                                 const FilterSet& filters) {
  if (static_cast<int>(params.size()) != filters.num_channels()) {
    throw std::invalid_argument("BuildDerivativeSet: channel count mismatch");
  }
  DerivativeSet set;
  for (int kind = 0; kind < 3; ++kind) {
    set.filters[kind].reserve(params.size());
  }
  for (const ChannelParams& p : params) {
    SynthesizedFilter sf = SynthesizeFilterWithGrads(p, config);
    set.filters[kChirp].push_back(std::move(sf.d_chirp));
    set.filters[kBandwidth].push_back(std::move(sf.d_bandwidth));
    set.filters[kOrder].push_back(std::move(sf.d_order));
  }
  for (int kind = 0; kind < 3; ++kind) {
    set.cross[kind] = ComputeCrossGram(filters.impulse_responses,
                                       set.filters[kind], config.stride);
  }
  return set;
}

double Loss(const Eigen::ArrayXd& signal, const Eigen::ArrayXd& coefficients,
            const StridedDictionary& dict, double lambda) {
  if (signal.size() != dict.signal_len ||
      coefficients.size() != dict.num_atoms()) {
    throw std::invalid_argument("Loss: dimension mismatch");
  }
  const Eigen::ArrayXd residual = SynthesizeSignal(dict, coefficients) - signal;
  const int active = static_cast<int>((coefficients != 0.0).count());
  return 0.5 * (residual * residual).sum() + SparsityCost(lambda, active);
}

namespace {

// One reverse sweep of the adjoint recursion
//   ubar_{t-1} = (1 - beta) ubar_t + mask_{t-1} o [-beta (G - I) ubar_t],
// starting from the given seed for ubar at the last iteration. Accumulates
// the Gram-route gradient contributions -beta * sum_t <ubar_t, dG/dtheta
// a_{t-1}> into grads and returns pbar = beta * sum_t ubar_t.
//
// All Gram contractions run over active entries and their lag windows only;
// the dense dictionary is never formed.
Eigen::ArrayXd AdjointSweep(const Eigen::ArrayXd& seed,
                            const EncodeTrace& trace,
                            const StridedDictionary& dict,
                            const GramTable& gram, const DerivativeSet& derivs,
                            const LcaConfig& config, ParamGradients* grads) {
  const double beta = config.dt / config.tau;
  const int k = dict.num_channels();
  const int shifts = dict.shifts_per_channel;
  const int radius = gram.lag_radius;
  const int num_iters = static_cast<int>(trace.activations.size());

  Eigen::ArrayXd ubar = seed;
  Eigen::ArrayXd pbar = Eigen::ArrayXd::Zero(dict.num_atoms());
  std::vector<double> chain_delta;

  for (int t = num_iters; t >= 1; --t) {
    pbar += beta * ubar;
    if (t == 1) break;
    const SparseCode& a_prev = trace.activations[t - 2];
    if (a_prev.empty()) {
      ubar *= (1.0 - beta);
      continue;
    }
    chain_delta.assign(a_prev.size(), 0.0);
    for (size_t n = 0; n < a_prev.size(); ++n) {
      const int m = a_prev.indices[n];
      const double value = a_prev.values[n];
      const int ch = m / shifts;
      const int shift = m % shifts;

      // Forward window: pairs ubar[(i1, shift + d)] with the derivative of
      // channel `ch`; table slot order (filter, derivative).
      double sum_a[3] = {0.0, 0.0, 0.0};
      {
        const int d_lo = std::max(-radius, -shift);
        const int d_hi = std::min(radius, shifts - 1 - shift);
        for (int i1 = 0; i1 < k; ++i1) {
          const double* cg0 = derivs.cross[0].LagRow(i1, ch);
          const double* cg1 = derivs.cross[1].LagRow(i1, ch);
          const double* cg2 = derivs.cross[2].LagRow(i1, ch);
          const double* u_row = ubar.data() + static_cast<size_t>(i1) * shifts;
          for (int d = d_lo; d <= d_hi; ++d) {
            const double uv = u_row[shift + d];
            sum_a[0] += uv * cg0[d];
            sum_a[1] += uv * cg1[d];
            sum_a[2] += uv * cg2[d];
          }
        }
      }
      for (int kind = 0; kind < 3; ++kind) {
        grads->of(kind)[ch] += -beta * value * sum_a[kind];
      }

      // Backward window: pairs ubar[(i, shift - d)] with each channel's
      // derivative; the same pass evaluates the Gram row dot needed for the
      // masked inhibition chain.
      double row_dot = 0.0;
      {
        const int d_lo = std::max(-radius, shift - (shifts - 1));
        const int d_hi = std::min(radius, shift);
        for (int i = 0; i < k; ++i) {
          const double* cc = gram.LagRow(ch, i);
          const double* cg0 = derivs.cross[0].LagRow(ch, i);
          const double* cg1 = derivs.cross[1].LagRow(ch, i);
          const double* cg2 = derivs.cross[2].LagRow(ch, i);
          const double* u_row = ubar.data() + static_cast<size_t>(i) * shifts;
          double sum_b[3] = {0.0, 0.0, 0.0};
          for (int d = d_lo; d <= d_hi; ++d) {
            const double uv = u_row[shift - d];
            row_dot += uv * cc[d];
            sum_b[0] += uv * cg0[d];
            sum_b[1] += uv * cg1[d];
            sum_b[2] += uv * cg2[d];
          }
          grads->of(0)[i] += -beta * value * sum_b[0];
          grads->of(1)[i] += -beta * value * sum_b[1];
          grads->of(2)[i] += -beta * value * sum_b[2];
        }
      }
      chain_delta[n] = -beta * (row_dot - ubar[m]);
    }
    ubar *= (1.0 - beta);
    for (size_t n = 0; n < a_prev.size(); ++n) {
      ubar[a_prev.indices[n]] += chain_delta[n];
    }
  }
  return pbar;
}

// Adds sum_j x[(i, j)] * proj[(i, j)] to grads[kind][i] for each channel.
void AddChannelDots(const Eigen::ArrayXd& x, const Eigen::ArrayXd& proj,
                    int shifts, Eigen::ArrayXd* per_channel) {
  const int k = static_cast<int>(per_channel->size());
  for (int i = 0; i < k; ++i) {
    (*per_channel)[i] += (x.segment(static_cast<size_t>(i) * shifts, shifts) *
                          proj.segment(static_cast<size_t>(i) * shifts, shifts))
                             .sum();
  }
}

void CheckTrace(const EncodeTrace& trace, const StridedDictionary& dict,
                const LcaConfig& config) {
  if (static_cast<int>(trace.activations.size()) != config.num_iters) {
    throw std::invalid_argument(
        "Backward: trace does not cover num_iters iterations");
  }
  if (trace.projection.size() != dict.num_atoms() ||
      trace.final_potentials.size() != dict.num_atoms()) {
    throw std::invalid_argument("Backward: trace dimension mismatch");
  }
}

Eigen::ArrayXd ReconstructionSeed(const EncodeTrace& trace,
                                  const StridedDictionary& dict,
                                  const GramTable& gram) {
  const SparseCode& a_final = trace.activations.back();
  Eigen::ArrayXd seed = Eigen::ArrayXd::Zero(dict.num_atoms());
  if (a_final.empty()) return seed;
  const Eigen::ArrayXd inh = Inhibit(dict, gram, a_final);
  for (size_t n = 0; n < a_final.size(); ++n) {
    const int m = a_final.indices[n];
    // (G a - p) masked to the active set: the exact threshold chain.
    seed[m] = inh[m] + a_final.values[n] - trace.projection[m];
  }
  return seed;
}

Eigen::ArrayXd SparsitySeed(const EncodeTrace& trace, double lambda) {
  // Surviving cost gradient (u where inactive, 0 where active), injected
  // straight into the final potentials.
  Eigen::ArrayXd seed = Eigen::ArrayXd::Zero(trace.final_potentials.size());
  for (int m = 0; m < seed.size(); ++m) {
    const double u = trace.final_potentials[m];
    if (u < lambda && u > -lambda) seed[m] = u;
  }
  return seed;
}

void AddProjectionTerms(const Eigen::ArrayXd& pbar,
                        const Eigen::ArrayXd& signal,
                        const StridedDictionary& dict,
                        const DerivativeSet& derivs, ParamGradients* grads) {
  for (int kind = 0; kind < 3; ++kind) {
    const Eigen::ArrayXd proj = StridedCorrelate(
        derivs.filters[kind], dict.stride, dict.shifts_per_channel, signal);
    AddChannelDots(pbar, proj, dict.shifts_per_channel, &grads->of(kind));
  }
}

void AddResidualTerm(const Eigen::ArrayXd& signal, const EncodeTrace& trace,
                     const StridedDictionary& dict,
                     const DerivativeSet& derivs, ParamGradients* grads) {
  const SparseCode& a_final = trace.activations.back();
  if (a_final.empty()) return;
  const Eigen::ArrayXd residual = SynthesizeSparse(dict, a_final) - signal;
  const int shifts = dict.shifts_per_channel;
  for (int kind = 0; kind < 3; ++kind) {
    const Eigen::ArrayXd proj = StridedCorrelate(derivs.filters[kind],
                                                 dict.stride, shifts, residual);
    Eigen::ArrayXd& out = grads->of(kind);
    for (size_t n = 0; n < a_final.size(); ++n) {
      const int m = a_final.indices[n];
      out[m / shifts] += a_final.values[n] * proj[m];
    }
  }
}

void CheckGradientsFinite(const ParamGradients& grads) {
  for (int kind = 0; kind < 3; ++kind) {
    const Eigen::ArrayXd& g = grads.of(kind);
    for (int i = 0; i < g.size(); ++i) {
      if (!std::isfinite(g[i])) {
        throw DivergenceError("Backward: non-finite gradient for channel " +
                              std::to_string(i) + " parameter " +
                              ParamKindName(kind));
      }
    }
  }
}

}  // namespace

BackwardResult BackwardParts(const Eigen::ArrayXd& signal,
                             const EncodeTrace& trace,
                             const StridedDictionary& dict,
                             const GramTable& gram,
                             const DerivativeSet& derivs,
                             const LcaConfig& config) {
  config.Validate();
  CheckTrace(trace, dict, config);
  const int k = dict.num_channels();
  BackwardResult result;
  result.reconstruction = ZeroGradients(k);
  result.sparsity = ZeroGradients(k);

  const Eigen::ArrayXd pbar_rec =
      AdjointSweep(ReconstructionSeed(trace, dict, gram), trace, dict, gram,
                   derivs, config, &result.reconstruction);
  AddProjectionTerms(pbar_rec, signal, dict, derivs, &result.reconstruction);
  AddResidualTerm(signal, trace, dict, derivs, &result.reconstruction);

  const Eigen::ArrayXd pbar_sp =
      AdjointSweep(SparsitySeed(trace, config.threshold), trace, dict, gram,
                   derivs, config, &result.sparsity);
  AddProjectionTerms(pbar_sp, signal, dict, derivs, &result.sparsity);

  CheckGradientsFinite(result.reconstruction);
  CheckGradientsFinite(result.sparsity);
  return result;
}

ParamGradients Backward(const Eigen::ArrayXd& signal, const EncodeTrace& trace,
                        const StridedDictionary& dict, const GramTable& gram,
                        const DerivativeSet& derivs, const LcaConfig& config) {
  config.Validate();
  CheckTrace(trace, dict, config);
  ParamGradients grads = ZeroGradients(dict.num_channels());
  const Eigen::ArrayXd seed = ReconstructionSeed(trace, dict, gram) +
                              SparsitySeed(trace, config.threshold);
  const Eigen::ArrayXd pbar =
      AdjointSweep(seed, trace, dict, gram, derivs, config, &grads);
  AddProjectionTerms(pbar, signal, dict, derivs, &grads);
  AddResidualTerm(signal, trace, dict, derivs, &grads);
  CheckGradientsFinite(grads);
  return grads;
}

AdamState MakeAdamState(int num_channels) {
  AdamState state;
  for (int kind = 0; kind < 3; ++kind) {
    state.first_moment[kind] = Eigen::ArrayXd::Zero(num_channels);
    state.second_moment[kind] = Eigen::ArrayXd::Zero(num_channels);
  }
  return state;
}

AdamUpdateResult AdamUpdate(const std::vector<ChannelParams>& params,
                            const ParamGradients& grads, AdamState& state,
                            const TrainConfig& config) {
  config.Validate();
  const int k = static_cast<int>(params.size());
  for (int kind = 0; kind < 3; ++kind) {
    if (grads.of(kind).size() != k ||
        state.first_moment[kind].size() != k ||
        state.second_moment[kind].size() != k) {
      throw std::invalid_argument("AdamUpdate: shape mismatch");
    }
  }
  ++state.step_count;
  const double bias1 = 1.0 - std::pow(config.adam_beta1, state.step_count);
  const double bias2 = 1.0 - std::pow(config.adam_beta2, state.step_count);

  AdamUpdateResult result;
  result.params = params;
  for (int kind = 0; kind < 3; ++kind) {
    Eigen::ArrayXd& m = state.first_moment[kind];
    Eigen::ArrayXd& v = state.second_moment[kind];
    const Eigen::ArrayXd& g = grads.of(kind);
    m = config.adam_beta1 * m + (1.0 - config.adam_beta1) * g;
    v = config.adam_beta2 * v + (1.0 - config.adam_beta2) * g * g;
    for (int i = 0; i < k; ++i) {
      const double m_hat = m[i] / bias1;
      const double v_hat = v[i] / bias2;
      const double step =
          config.learning_rate * m_hat / (std::sqrt(v_hat) + config.adam_eps);
      ChannelParams& p = result.params[i];
      switch (kind) {
        case kChirp:
          p.chirp -= step;
          break;
        case kBandwidth:
          p.bandwidth_scale -= step;
          if (p.bandwidth_scale < 0.02) {
            p.bandwidth_scale = 0.02;
            ++result.clamped;
          }
          break;
        case kOrder:
          p.order -= step;
          if (p.order < 1.05) {
            p.order = 1.05;
            ++result.clamped;
          }
          break;
      }
    }
  }
  return result;
}

namespace {

// Everything the buffered traces refer to; immutable once built so pending
// backward passes stay consistent with the dictionary they were encoded
// under.
struct FlushContext {
  FilterSet filters;
  GramTable gram;
  DerivativeSet derivs;
};

std::shared_ptr<const FlushContext> BuildFlushContext(
    const std::vector<ChannelParams>& params, const FilterbankConfig& config) {
  auto ctx = std::make_shared<FlushContext>();
  ctx->filters = MakeFilterSet(params, config);
  ctx->gram = ComputeCrossGram(ctx->filters.impulse_responses,
                               ctx->filters.impulse_responses, config.stride);
  ctx->derivs = BuildDerivativeSet(params, config, ctx->filters);
  return ctx;
}

struct BufferedLoss {
  int signal_index = 0;
  std::shared_ptr<const FlushContext> ctx;
  EncodeTrace trace;
  double loss = 0.0;
  double mse = 0.0;
  int spikes = 0;
};

void ShuffleOrder(std::vector<int>& order, std::mt19937_64& rng) {
  for (size_t i = order.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
}

}  // namespace

TrainResult Train(const std::vector<Eigen::ArrayXd>& dataset,
                  const std::vector<ChannelParams>& initial_params,
                  const FilterbankConfig& fb_config,
                  const LcaConfig& lca_config,
                  const TrainConfig& train_config) {
  fb_config.Validate();
  lca_config.Validate();
  train_config.Validate();
  if (dataset.empty()) {
    throw std::invalid_argument("Train: empty dataset");
  }
  if (static_cast<int>(initial_params.size()) != fb_config.num_channels) {
    throw std::invalid_argument("Train: initial params size mismatch");
  }

  TrainResult result;
  result.params = initial_params;
  result.adam = MakeAdamState(fb_config.num_channels);

  // Normalize and pad once; unusable signals (e.g. silence) are dropped up
  // front with a warning.
  std::vector<Eigen::ArrayXd> prepared;
  std::vector<int> usable;
  prepared.reserve(dataset.size());
  for (size_t i = 0; i < dataset.size(); ++i) {
    try {
      prepared.push_back(
          Prepare(dataset[i], fb_config.filter_len, fb_config.stride));
      usable.push_back(static_cast<int>(i));
    } catch (const std::exception& e) {
      prepared.push_back(Eigen::ArrayXd());
      ++result.skipped_signals;
      result.warnings.push_back("signal " + std::to_string(i) +
                                " unusable: " + e.what());
    }
  }
  if (usable.empty()) {
    throw std::invalid_argument("Train: no usable signals in dataset");
  }

  std::mt19937_64 rng(train_config.rng_seed);
  auto ctx = BuildFlushContext(result.params, fb_config);
  std::vector<BufferedLoss> buffer;
  int flush_index = 0;

  auto flush = [&](size_t count) {
    ParamGradients sum = ZeroGradients(fb_config.num_channels);
    double loss_sum = 0.0, mse_sum = 0.0, spike_sum = 0.0;
    for (size_t n = 0; n < count; ++n) {
      const BufferedLoss& item = buffer[n];
      const Eigen::ArrayXd& signal = prepared[item.signal_index];
      StridedDictionary dict =
          BuildDictionary(item.ctx->filters, fb_config.stride,
                          static_cast<int>(signal.size()));
      ParamGradients g = Backward(signal, item.trace, dict, item.ctx->gram,
                                  item.ctx->derivs, lca_config);
      for (int kind = 0; kind < 3; ++kind) sum.of(kind) += g.of(kind);
      loss_sum += item.loss;
      mse_sum += item.mse;
      spike_sum += item.spikes;
    }
    for (int kind = 0; kind < 3; ++kind) {
      sum.of(kind) /= static_cast<double>(count);
    }
    AdamUpdateResult upd =
        AdamUpdate(result.params, sum, result.adam, train_config);
    result.params = std::move(upd.params);
    result.clamped_params += upd.clamped;
    ctx = BuildFlushContext(result.params, fb_config);
    FlushRecord record;
    record.flush_index = flush_index++;
    record.mean_loss = loss_sum / count;
    record.mean_mse = mse_sum / count;
    record.mean_spikes = spike_sum / count;
    record.params = result.params;
    result.log.push_back(std::move(record));
    buffer.erase(buffer.begin(), buffer.begin() + count);
  };

  for (int epoch = 0; epoch < train_config.num_epochs; ++epoch) {
    std::vector<int> order = usable;
    ShuffleOrder(order, rng);
    for (size_t start = 0; start < order.size();
         start += train_config.batch_size) {
      const size_t batch_end =
          std::min(order.size(), start + train_config.batch_size);
      const int batch_n = static_cast<int>(batch_end - start);

      struct Slot {
        bool ok = false;
        std::string error;
        EncodeTrace trace;
        double loss = 0.0, mse = 0.0;
        int spikes = 0;
      };
      std::vector<Slot> slots(batch_n);
      ParallelFor(batch_n, train_config.threads, [&](int b) {
        const int sig = order[start + b];
        try {
          StridedDictionary dict =
              BuildDictionary(ctx->filters, fb_config.stride,
                              static_cast<int>(prepared[sig].size()));
          EncodeResult enc =
              Encode(prepared[sig], dict, ctx->gram, lca_config,
                     &slots[b].trace);
          slots[b].loss = enc.energy_trace.back();
          slots[b].mse = enc.mse;
          slots[b].spikes = enc.spike_count;
          slots[b].ok = true;
        } catch (const std::exception& e) {
          slots[b].error = e.what();
        }
      });

      int batch_ok = 0;
      for (int b = 0; b < batch_n; ++b) {
        if (!slots[b].ok) {
          ++result.skipped_signals;
          result.warnings.push_back("signal " +
                                    std::to_string(order[start + b]) +
                                    " skipped: " + slots[b].error);
          continue;
        }
        ++batch_ok;
        BufferedLoss item;
        item.signal_index = order[start + b];
        item.ctx = ctx;
        item.trace = std::move(slots[b].trace);
        item.loss = slots[b].loss;
        item.mse = slots[b].mse;
        item.spikes = slots[b].spikes;
        buffer.push_back(std::move(item));
      }
      if (batch_ok == 0) {
        throw DivergenceError("Train: every signal in a batch failed to encode");
      }
      while (buffer.size() >= static_cast<size_t>(train_config.buffer_size)) {
        flush(train_config.buffer_size);
      }
    }
  }
  // Losses left over when the epochs end still get their update.
  if (!buffer.empty()) flush(buffer.size());
  return result;
}

namespace {

double UnitUniform(std::mt19937_64& rng) {
  return (rng() >> 11) * 0x1.0p-53;
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * UnitUniform(rng);
}

}  // namespace

std::vector<Eigen::ArrayXd> MakeSyntheticCorpus(int count, std::uint64_t seed,
                                                double sample_rate_hz,
                                                double duration_s) {
  if (count < 1) {
    throw std::invalid_argument("MakeSyntheticCorpus: count must be >= 1");
  }
  if (!(sample_rate_hz > 0.0) || !(duration_s > 0.0)) {
    throw std::invalid_argument("MakeSyntheticCorpus: bad rate or duration");
  }
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  const int n = std::max(2, static_cast<int>(std::lround(sample_rate_hz *
                                                         duration_s)));
  std::vector<Eigen::ArrayXd> corpus;
  corpus.reserve(count);

  for (int idx = 0; idx < count; ++idx) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(idx)};
    std::mt19937_64 rng(seq);
    Eigen::ArrayXd x = Eigen::ArrayXd::Zero(n);

    // Tones with hyperbolically gliding instantaneous frequency under a
    // smooth gamma-shaped envelope.
    const int num_glides = 2 + static_cast<int>(rng() % 3);
    for (int g = 0; g < num_glides; ++g) {
      const double f0 = std::exp(Uniform(rng, std::log(400.0), std::log(4300.0)));
      const double t0 = Uniform(rng, 0.010, 0.020);
      const double dev_cap =
          std::min({f0 - 150.0, 4800.0 - f0, 600.0});
      const double dev = Uniform(rng, 0.3, 1.0) * dev_cap;
      const double glide_rate =
          (UnitUniform(rng) < 0.5 ? -1.0 : 1.0) * dev * kTwoPi * t0;
      const double onset = Uniform(rng, 0.0, 0.5) * duration_s;
      const double env_tau = Uniform(rng, 0.02, 0.08);
      const double amp = Uniform(rng, 0.4, 1.0);
      const double phase0 = Uniform(rng, 0.0, kTwoPi);
      const double env_peak = 4.0 * env_tau * env_tau * std::exp(-2.0);
      for (int i = 0; i < n; ++i) {
        const double t = i / sample_rate_hz - onset;
        if (t <= 0.0) continue;
        const double env = t * t * std::exp(-t / env_tau) / env_peak;
        x[i] += amp * env *
                std::cos(kTwoPi * f0 * t + glide_rate * std::log(t + t0) +
                         phase0);
      }
    }

    // Damped harmonic bursts with a soft attack.
    const int num_bursts = 1 + static_cast<int>(rng() % 3);
    for (int b = 0; b < num_bursts; ++b) {
      const double f_base = Uniform(rng, 250.0, 1200.0);
      const int max_h = std::max(1, static_cast<int>(4800.0 / f_base));
      const int harmonics = std::min(2 + static_cast<int>(rng() % 3), max_h);
      const double decay_tau = Uniform(rng, 0.010, 0.050);
      const double onset = Uniform(rng, 0.0, 0.7) * duration_s;
      const double amp = Uniform(rng, 0.3, 0.8);
      std::vector<double> phases(harmonics);
      for (int h = 0; h < harmonics; ++h) phases[h] = Uniform(rng, 0.0, kTwoPi);
      const double attack_tau = 0.002;
      for (int i = 0; i < n; ++i) {
        const double t = i / sample_rate_hz - onset;
        if (t <= 0.0) continue;
        const double env = (t / attack_tau) * std::exp(1.0 - t / attack_tau);
        const double attack = t < attack_tau ? env : 1.0;
        double tone = 0.0;
        for (int h = 0; h < harmonics; ++h) {
          tone += std::cos(kTwoPi * f_base * (h + 1) * t + phases[h]) / (h + 1);
        }
        x[i] += amp * attack * std::exp(-t / decay_tau) * tone;
      }
    }

    // A quiet band-limited tone cloud instead of white noise so no energy
    // lands near the Nyquist frequency.
    constexpr int kNoiseTones = 64;
    const double noise_amp = 0.01 / std::sqrt(kNoiseTones / 2.0);
    for (int nt = 0; nt < kNoiseTones; ++nt) {
      const double f = Uniform(rng, 50.0, 5000.0);
      const double phase = Uniform(rng, 0.0, kTwoPi);
      for (int i = 0; i < n; ++i) {
        x[i] += noise_amp * std::cos(kTwoPi * f * i / sample_rate_hz + phase);
      }
    }

    // Raised-cosine fades kill the edge discontinuities.
    const int ramp = std::min(n / 4, static_cast<int>(0.010 * sample_rate_hz));
    for (int i = 0; i < ramp; ++i) {
      const double w = 0.5 - 0.5 * std::cos(kTwoPi / 2.0 * i / ramp);
      x[i] *= w;
      x[n - 1 - i] *= w;
    }

    const double peak = x.abs().maxCoeff();
    if (peak > 0.0) x /= peak;
    corpus.push_back(std::move(x));
  }
  return corpus;
}

}  // namespace sgram
