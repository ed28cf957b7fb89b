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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <sstream>

#include "dense_reference.h"
#include "sgram/errors.h"
#include "sgram/lca.h"
#include "test_util.h"

using namespace sgram;
using namespace sgram::testing;

TEST_CASE("hard threshold keeps the boundary active") {
  CHECK(HardThreshold(0.5, 1.0) == 0.0);
  CHECK(HardThreshold(1.5, 1.0) == 1.5);
  CHECK(HardThreshold(-1.0, 1.0) == -1.0);
  CHECK(HardThreshold(-0.99, 1.0) == 0.0);
}

TEST_CASE("lca config validation") {
  LcaConfig config;
  config.dt = config.tau;
  CHECK_THROWS_AS(config.Validate(), std::invalid_argument);
  config = LcaConfig{};
  config.num_iters = 0;
  CHECK_THROWS_AS(config.Validate(), std::invalid_argument);
  config = LcaConfig{};
  config.threshold = -0.1;
  CHECK_THROWS_AS(config.Validate(), std::invalid_argument);
}

TEST_CASE("first step from rest scales the projection by dt over tau") {
  auto rng = MakeRng(31);
  auto inst = RandomTinyInstance(rng, 3, 32, 128);
  LcaConfig config;
  config.threshold = 1e9;  // keep everything silent
  const Eigen::ArrayXd p = Analyze(inst.dict, inst.signal);
  LcaState state = MakeRestState(inst.dict.num_atoms());
  state = LcaStep(state, p, inst.dict, inst.gram, config);
  const double beta = config.dt / config.tau;
  CHECK((state.potentials - beta * p).abs().maxCoeff() < 1e-14);
  CHECK((state.activations == 0.0).all());
}

TEST_CASE("with zero projection the potentials leak geometrically") {
  auto rng = MakeRng(32);
  auto inst = RandomTinyInstance(rng, 2, 16, 64);
  LcaConfig config;
  config.threshold = 10.0;
  const Eigen::ArrayXd p = Eigen::ArrayXd::Zero(inst.dict.num_atoms());
  LcaState state = MakeRestState(inst.dict.num_atoms());
  // Sub-threshold initial potentials, so activations stay zero.
  state.potentials = RandomSignal(rng, inst.dict.num_atoms());
  const Eigen::ArrayXd u0 = state.potentials;
  const double decay = 1.0 - config.dt / config.tau;
  double prev_max = u0.abs().maxCoeff();
  for (int t = 1; t <= 5; ++t) {
    state = LcaStep(state, p, inst.dict, inst.gram, config);
    CHECK((state.potentials - u0 * std::pow(decay, t)).abs().maxCoeff() <
          1e-14);
    const double cur_max = state.potentials.abs().maxCoeff();
    CHECK(cur_max <= prev_max);
    prev_max = cur_max;
  }
}

TEST_CASE("three steps match the dense reference") {
  auto rng = MakeRng(33);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = RandomTinyInstance(rng, 3, 24, 96);
    LcaConfig config;
    config.num_iters = 3;
    config.threshold = 0.2;
    config.dt = 0.002;
    const Eigen::MatrixXd d = DenseDictionaryMatrix(inst.dict);
    const DenseLcaRun want = DenseEncode(d, inst.signal.matrix(), config);

    const Eigen::ArrayXd p = Analyze(inst.dict, inst.signal);
    LcaState state = MakeRestState(inst.dict.num_atoms());
    for (int t = 0; t < 3; ++t) {
      state = LcaStep(state, p, inst.dict, inst.gram, config);
    }
    CHECK((state.potentials - want.potentials.array()).abs().maxCoeff() <
          1e-10);
    CHECK((state.activations - want.activations.array()).abs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("full encode matches the dense reference over 64 iterations") {
  auto rng = MakeRng(34);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = RandomTinyInstance(rng, 3, 32, 200);
    LcaConfig config;
    config.threshold = 0.15;
    const Eigen::MatrixXd d = DenseDictionaryMatrix(inst.dict);
    const DenseLcaRun want = DenseEncode(d, inst.signal.matrix(), config);
    const EncodeResult got = Encode(inst.signal, inst.dict, inst.gram, config);
    CHECK((got.coefficients - want.activations.array()).abs().maxCoeff() <
          1e-9);
    for (int t = 0; t < config.num_iters; ++t) {
      CHECK(got.mse_trace[t] == doctest::Approx(want.mse_trace[t]).epsilon(1e-9));
      CHECK(got.energy_trace[t] ==
            doctest::Approx(want.energy_trace[t]).epsilon(1e-9));
    }
  }
}

TEST_CASE("matched atom is recovered sparsely") {
  auto rng = MakeRng(35);
  auto inst = RandomChirpInstance(rng, 2, 64, 16, 256);
  // Fast integration so the dynamics settle within 64 iterations.
  LcaConfig config;
  config.dt = 0.005;
  config.threshold = 0.01;
  SparseCode one;
  one.push(inst.dict.FlatIndex(1, 4), 1.0);
  const Eigen::ArrayXd signal = SynthesizeSparse(inst.dict, one);
  const double power = (signal * signal).sum();
  const EncodeResult result = Encode(signal, inst.dict, inst.gram, config);
  CHECK(result.mse < 1e-3 * power / inst.dict.signal_len);
  CHECK(result.spike_count <= 5);
  // Sanity: the dense oracle agrees on the recovery.
  const DenseLcaRun dense =
      DenseEncode(DenseDictionaryMatrix(inst.dict), signal.matrix(), config);
  CHECK(dense.mse_trace.back() < 1e-3 * power / inst.dict.signal_len);
}

TEST_CASE("zero signal encodes to silence") {
  auto rng = MakeRng(36);
  auto inst = RandomTinyInstance(rng, 2, 16, 64);
  LcaConfig config;
  const EncodeResult result = Encode(
      Eigen::ArrayXd::Zero(inst.dict.signal_len), inst.dict, inst.gram, config);
  CHECK(result.spike_count == 0);
  CHECK(result.mse == 0.0);
  CHECK((result.coefficients == 0.0).all());
}

TEST_CASE("energy descends from the first to the last iteration") {
  auto rng = MakeRng(37);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = RandomTinyInstance(rng, 3, 32, 160);
    LcaConfig config;
    config.dt = 0.002;
    // Low enough that something fires for a random signal.
    config.threshold = 0.05;
    const EncodeResult result =
        Encode(inst.signal, inst.dict, inst.gram, config);
    if (result.spike_count == 0) continue;
    CHECK(result.energy_trace.back() < result.energy_trace.front());
    CHECK(result.mse_trace.back() < result.mse_trace.front());
  }
}

TEST_CASE("threshold consistency holds after every step") {
  auto rng = MakeRng(38);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = RandomTinyInstance(rng, 3, 16, 64);
    LcaConfig config;
    config.dt = Uniform(rng, 0.0005, 0.009);
    config.threshold = Uniform(rng, 0.0, 0.3);
    config.num_iters = 5;
    const Eigen::ArrayXd p = Analyze(inst.dict, inst.signal);
    LcaState state = MakeRestState(inst.dict.num_atoms());
    for (int t = 0; t < config.num_iters; ++t) {
      state = LcaStep(state, p, inst.dict, inst.gram, config);
      for (int m = 0; m < state.potentials.size(); ++m) {
        CHECK(state.activations[m] ==
              HardThreshold(state.potentials[m], config.threshold));
      }
    }
  }
}

TEST_CASE("encode is bit reproducible") {
  auto rng = MakeRng(39);
  auto inst = RandomTinyInstance(rng, 4, 32, 256);
  LcaConfig config;
  config.threshold = 0.05;
  const EncodeResult a = Encode(inst.signal, inst.dict, inst.gram, config);
  const EncodeResult b = Encode(inst.signal, inst.dict, inst.gram, config);
  REQUIRE(a.coefficients.size() == b.coefficients.size());
  CHECK(std::memcmp(a.coefficients.data(), b.coefficients.data(),
                    sizeof(double) * a.coefficients.size()) == 0);
  CHECK(a.energy_trace == b.energy_trace);
  CHECK(a.mse_trace == b.mse_trace);
}

TEST_CASE("non-finite input aborts with the iteration named") {
  auto rng = MakeRng(40);
  auto inst = RandomTinyInstance(rng, 2, 16, 64);
  Eigen::ArrayXd bad = inst.signal;
  bad[3] = std::numeric_limits<double>::infinity();
  LcaConfig config;
  CHECK_THROWS_WITH_AS(Encode(bad, inst.dict, inst.gram, config),
                       doctest::Contains("iteration 1"), DivergenceError);
}

TEST_CASE("spikegram lists one entry per nonzero coefficient") {
  auto rng = MakeRng(41);
  FilterSet filters = RandomFilterSet(rng, 4, 32);
  auto dict = BuildDictionary(filters, 10, 32 + 10 * 9);
  REQUIRE(dict.shifts_per_channel == 10);

  SUBCASE("empty result gives an empty list") {
    EncodeResult result;
    result.coefficients = Eigen::ArrayXd::Zero(dict.num_atoms());
    CHECK(ExtractSpikegram(result, dict).empty());
  }

  SUBCASE("one-hot coefficient maps index arithmetic to channel and time") {
    EncodeResult result;
    result.coefficients = Eigen::ArrayXd::Zero(dict.num_atoms());
    result.coefficients[dict.FlatIndex(3, 5)] = 0.75;
    result.spike_count = 1;
    const auto spikes = ExtractSpikegram(result, dict);
    REQUIRE(spikes.size() == 1);
    CHECK(spikes[0].channel == 3);
    CHECK(spikes[0].time_index == 50);
    CHECK(spikes[0].amplitude == 0.75);
  }

  SUBCASE("count always equals spike_count and order is (channel, time)") {
    LcaConfig config;
    config.threshold = 0.02;
    config.dt = 0.002;
    auto gram = ComputeGram(dict);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::ArrayXd signal = RandomSignal(rng, dict.signal_len);
      const EncodeResult result = Encode(signal, dict, gram, config);
      const auto spikes = ExtractSpikegram(result, dict);
      CHECK(static_cast<int>(spikes.size()) == result.spike_count);
      for (size_t s = 1; s < spikes.size(); ++s) {
        const bool ordered =
            spikes[s - 1].channel < spikes[s].channel ||
            (spikes[s - 1].channel == spikes[s].channel &&
             spikes[s - 1].time_index < spikes[s].time_index);
        CHECK(ordered);
      }
    }
  }
}

TEST_CASE("spikegram csv format") {
  std::ostringstream out;
  WriteSpikegramCsv(out, {Spike{1, 20, 0.5}, Spike{2, 0, -1.25}});
  CHECK(out.str() == "channel,time_index,amplitude\n1,20,0.5\n2,0,-1.25\n");
}
