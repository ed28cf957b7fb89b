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

#include "sgram/filterbank.h"

#include <cmath>
#include <stdexcept>

#include "sgram/errors.h"

namespace sgram {

namespace {
constexpr double kErbOffsetHz = 24.7;
constexpr double kErbSlopePerHz = 0.108;
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kMinFilterNorm = 1e-300;
}  // namespace

double Erb(double freq_hz) {
  if (freq_hz < 0.0) {
    throw std::domain_error("Erb: negative frequency");
  }
  return kErbOffsetHz + kErbSlopePerHz * freq_hz;
}

double ErbRate(double freq_hz) {
  if (freq_hz < 0.0) {
    throw std::domain_error("ErbRate: negative frequency");
  }
  return std::log1p(kErbSlopePerHz * freq_hz / kErbOffsetHz) / kErbSlopePerHz;
}

double ErbRateInverse(double rate) {
  return kErbOffsetHz / kErbSlopePerHz * std::expm1(kErbSlopePerHz * rate);
}

void FilterbankConfig::Validate() const {
  if (num_channels < 1) {
    throw std::invalid_argument("FilterbankConfig: num_channels must be >= 1");
  }
  if (filter_len < 2) {
    throw std::invalid_argument("FilterbankConfig: filter_len must be >= 2");
  }
  if (stride < 1 || stride > filter_len) {
    throw std::invalid_argument(
        "FilterbankConfig: stride must be in [1, filter_len]");
  }
  if (!(sample_rate_hz > 0.0)) {
    throw std::invalid_argument("FilterbankConfig: sample rate must be > 0");
  }
  if (!(freq_min_hz > 0.0) || !(freq_min_hz < freq_max_hz) ||
      !(freq_max_hz < sample_rate_hz / 2.0)) {
    throw std::invalid_argument(
        "FilterbankConfig: need 0 < freq_min < freq_max < sample_rate / 2");
  }
}

void ValidateChannelParams(const ChannelParams& params,
                           const FilterbankConfig& config) {
  if (!(params.center_freq_hz > 0.0) ||
      !(params.center_freq_hz < config.sample_rate_hz / 2.0)) {
    throw std::invalid_argument(
        "ChannelParams: center frequency outside (0, sample_rate / 2)");
  }
  if (!(params.order > 1.0)) {
    throw std::invalid_argument("ChannelParams: order must be > 1");
  }
  if (!(params.bandwidth_scale > 0.0)) {
    throw std::invalid_argument("ChannelParams: bandwidth_scale must be > 0");
  }
}

std::vector<double> CenterFrequencies(const FilterbankConfig& config) {
  config.Validate();
  const int k = config.num_channels;
  std::vector<double> freqs(k);
  freqs.front() = config.freq_min_hz;
  if (k == 1) return freqs;
  freqs.back() = config.freq_max_hz;
  const double lo = ErbRate(config.freq_min_hz);
  const double hi = ErbRate(config.freq_max_hz);
  for (int i = 1; i < k - 1; ++i) {
    freqs[i] = ErbRateInverse(lo + (hi - lo) * i / (k - 1));
  }
  return freqs;
}

namespace {

// Raw response and the pieces its partials are built from.
struct RawFilter {
  Eigen::ArrayXd g;
  Eigen::ArrayXd log_t;
  Eigen::ArrayXd envelope;  // t^(l-1) exp(-decay t)
  Eigen::ArrayXd phase;     // omega t + c log t
  Eigen::ArrayXd t;
  double norm = 0.0;
};

RawFilter SynthesizeRaw(const ChannelParams& params,
                        const FilterbankConfig& config) {
  ValidateChannelParams(params, config);
  const int n = config.filter_len;
  RawFilter raw;
  raw.t.resize(n);
  raw.log_t.resize(n);
  raw.envelope.resize(n);
  raw.phase.resize(n);
  raw.g.resize(n);
  const double erb = Erb(params.center_freq_hz);
  const double decay = kTwoPi * params.bandwidth_scale * erb;
  const double omega = kTwoPi * params.center_freq_hz;
  for (int i = 0; i < n; ++i) {
    // Time starts one sample after zero; the log term is always defined and
    // for order > 1 the omitted t = 0 sample is exactly zero anyway.
    const double t = (i + 1) / config.sample_rate_hz;
    const double log_t = std::log(t);
    raw.t[i] = t;
    raw.log_t[i] = log_t;
    raw.envelope[i] = std::exp((params.order - 1.0) * log_t - decay * t);
    raw.phase[i] = omega * t + params.chirp * log_t;
    raw.g[i] = raw.envelope[i] * std::cos(raw.phase[i]);
  }
  raw.norm = std::sqrt((raw.g * raw.g).sum());
  if (!(raw.norm > kMinFilterNorm)) {
    throw DegenerateFilterError(
        "filter response underflowed; parameters are degenerate");
  }
  return raw;
}

}  // namespace

Eigen::ArrayXd SynthesizeFilter(const ChannelParams& params,
                                const FilterbankConfig& config,
                                double* norm_factor) {
  RawFilter raw = SynthesizeRaw(params, config);
  if (norm_factor != nullptr) *norm_factor = raw.norm;
  return raw.g / raw.norm;
}

SynthesizedFilter SynthesizeFilterWithGrads(const ChannelParams& params,
                                            const FilterbankConfig& config) {
  RawFilter raw = SynthesizeRaw(params, config);
  SynthesizedFilter out;
  out.norm_factor = raw.norm;
  out.samples = raw.g / raw.norm;

  const double erb = Erb(params.center_freq_hz);
  out.raw_d_chirp = -raw.envelope * raw.phase.sin() * raw.log_t;
  out.raw_d_bandwidth = -kTwoPi * erb * raw.t * raw.g;
  out.raw_d_order = raw.log_t * raw.g;

  // Chain through the normalization: d(g/|g|) = (dg - ghat <ghat, dg>) / |g|.
  auto normalize_grad = [&](const Eigen::ArrayXd& raw_grad) {
    const double radial = (out.samples * raw_grad).sum();
    return ((raw_grad - out.samples * radial) / raw.norm).eval();
  };
  out.d_chirp = normalize_grad(out.raw_d_chirp);
  out.d_bandwidth = normalize_grad(out.raw_d_bandwidth);
  out.d_order = normalize_grad(out.raw_d_order);
  return out;
}

FilterSet MakeFilterSet(const std::vector<ChannelParams>& params,
                        const FilterbankConfig& config) {
  config.Validate();
  if (static_cast<int>(params.size()) != config.num_channels) {
    throw std::invalid_argument(
        "MakeFilterSet: params size does not match num_channels");
  }
  FilterSet set;
  set.impulse_responses.reserve(params.size());
  set.norm_factors.reserve(params.size());
  for (const ChannelParams& p : params) {
    double norm = 0.0;
    set.impulse_responses.push_back(SynthesizeFilter(p, config, &norm));
    set.norm_factors.push_back(norm);
  }
  return set;
}

std::vector<ChannelParams> MakeUniformParams(const FilterbankConfig& config,
                                             double order,
                                             double bandwidth_scale,
                                             double chirp) {
  std::vector<double> freqs = CenterFrequencies(config);
  std::vector<ChannelParams> params(freqs.size());
  for (size_t i = 0; i < freqs.size(); ++i) {
    params[i] = ChannelParams{freqs[i], order, bandwidth_scale, chirp};
  }
  return params;
}

}  // namespace sgram
