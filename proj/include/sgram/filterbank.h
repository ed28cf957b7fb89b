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

#ifndef SGRAM_FILTERBANK_H_
#define SGRAM_FILTERBANK_H_

#include <Eigen/Core>
#include <vector>

namespace sgram {

// Equivalent Rectangular Bandwidth in Hz at the given frequency.
// Throws std::domain_error for negative frequencies.
double Erb(double freq_hz);

// Monotone warping whose derivative is 1/Erb(f). Equal steps on this scale
// give auditory-uniform channel spacing.
double ErbRate(double freq_hz);
double ErbRateInverse(double rate);

// Per-channel gammachirp parameters. (order, bandwidth_scale, chirp) are the
// learnable state; center_freq_hz stays fixed.
struct ChannelParams {
  double center_freq_hz = 1000.0;  // f
  double order = 4.0;              // l, gamma-envelope order, must stay > 1
  double bandwidth_scale = 1.0;    // b, multiplies Erb(f), must stay > 0
  double chirp = 0.0;              // c, log-time carrier modulation
};

struct FilterbankConfig {
  int num_channels = 16;
  int filter_len = 1024;
  int stride = 10;
  double sample_rate_hz = 16000.0;
  double freq_min_hz = 260.0;
  double freq_max_hz = 6000.0;

  // Throws std::invalid_argument on any violated invariant.
  void Validate() const;
};

void ValidateChannelParams(const ChannelParams& params,
                           const FilterbankConfig& config);

// num_channels frequencies, strictly increasing from freq_min_hz to
// freq_max_hz, equally spaced on the ERB-rate scale. A single channel takes
// the lower bound.
std::vector<double> CenterFrequencies(const FilterbankConfig& config);

// A bank of sampled impulse responses, each row normalized to unit l2 norm.
struct FilterSet {
  std::vector<Eigen::ArrayXd> impulse_responses;
  std::vector<double> norm_factors;  // pre-normalization l2 norms

  int num_channels() const {
    return static_cast<int>(impulse_responses.size());
  }
  int filter_len() const {
    return impulse_responses.empty()
               ? 0
               : static_cast<int>(impulse_responses.front().size());
  }
};

// Sampled gammachirp g(t) = t^(l-1) exp(-2 pi b Erb(f) t) cos(2 pi f t +
// c ln t), evaluated at t_n = (n+1)/fs and scaled to unit l2 norm. The time
// axis starts one sample after zero so the log term is always defined.
// Throws DegenerateFilterError when the raw response underflows.
Eigen::ArrayXd SynthesizeFilter(const ChannelParams& params,
                                const FilterbankConfig& config,
                                double* norm_factor = nullptr);

struct SynthesizedFilter {
  Eigen::ArrayXd samples;  // unit norm
  double norm_factor = 0.0;
  // Partials of the normalized samples with respect to chirp, bandwidth
  // scale and order. Each is tangent to the unit sphere at `samples`.
  Eigen::ArrayXd d_chirp;
  Eigen::ArrayXd d_bandwidth;
  Eigen::ArrayXd d_order;
  // Partials of the raw (unnormalized) response.
  Eigen::ArrayXd raw_d_chirp;
  Eigen::ArrayXd raw_d_bandwidth;
  Eigen::ArrayXd raw_d_order;
};

// Normalized samples plus analytic partials, chained through the l2
// normalization.
SynthesizedFilter SynthesizeFilterWithGrads(const ChannelParams& params,
                                            const FilterbankConfig& config);

FilterSet MakeFilterSet(const std::vector<ChannelParams>& params,
                        const FilterbankConfig& config);

// Uniform (order, bandwidth, chirp) across channels; center frequencies come
// from CenterFrequencies(config).
std::vector<ChannelParams> MakeUniformParams(const FilterbankConfig& config,
                                             double order,
                                             double bandwidth_scale,
                                             double chirp);

}  // namespace sgram

#endif  // SGRAM_FILTERBANK_H_
