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

#include <Eigen/Dense>

#include "dense_reference.h"
#include "sgram/dictionary.h"
#include "test_util.h"

using namespace sgram;
using namespace sgram::testing;

TEST_CASE("build computes shift counts") {
  auto rng = MakeRng(1);
  SUBCASE("k=1, F_l=4, r=2, T=8 gives M=3") {
    auto dict = BuildDictionary(RandomFilterSet(rng, 1, 4), 2, 8);
    CHECK(dict.shifts_per_channel == 3);
    CHECK(dict.num_atoms() == 3);
  }
  SUBCASE("r=1, T=F_l gives a single shift per channel") {
    auto dict = BuildDictionary(RandomFilterSet(rng, 3, 16), 1, 16);
    CHECK(dict.shifts_per_channel == 1);
    CHECK(dict.num_atoms() == 3);
  }
  SUBCASE("short signals are rejected") {
    CHECK_THROWS_AS(BuildDictionary(RandomFilterSet(rng, 1, 16), 1, 15),
                    std::invalid_argument);
  }
}

TEST_CASE("dense materialization matches the strided layout entry for entry") {
  auto rng = MakeRng(2);
  auto dict = BuildDictionary(RandomFilterSet(rng, 2, 8), 3, 20);
  REQUIRE(dict.shifts_per_channel == 5);
  const Eigen::MatrixXd d = DenseDictionaryMatrix(dict);
  // Directly indexed construction: row t, column (i, j) is filter i sampled
  // at t - j * stride when inside the window, zero otherwise.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 5; ++j) {
      for (int t = 0; t < 20; ++t) {
        const int rel = t - j * 3;
        const double want =
            (rel >= 0 && rel < 8) ? dict.filters.impulse_responses[i][rel] : 0.0;
        CHECK(d(t, dict.FlatIndex(i, j)) == want);
      }
    }
  }
}

TEST_CASE("analyze projects atoms onto themselves") {
  auto rng = MakeRng(3);
  auto dict = BuildDictionary(RandomFilterSet(rng, 3, 32), 4, 128);
  SUBCASE("an embedded atom correlates to one at its own index") {
    for (int trial = 0; trial < 10; ++trial) {
      const int i = UniformInt(rng, 0, 2);
      const int j = UniformInt(rng, 0, dict.shifts_per_channel - 1);
      SparseCode one;
      one.push(dict.FlatIndex(i, j), 1.0);
      const Eigen::ArrayXd p = Analyze(dict, SynthesizeSparse(dict, one));
      CHECK(std::abs(p[dict.FlatIndex(i, j)] - 1.0) < 1e-10);
    }
  }
  SUBCASE("zero signal gives zero projection") {
    const Eigen::ArrayXd p =
        Analyze(dict, Eigen::ArrayXd::Zero(dict.signal_len));
    CHECK((p == 0.0).all());
  }
  SUBCASE("length mismatch is an error") {
    CHECK_THROWS_AS(Analyze(dict, Eigen::ArrayXd::Zero(40)),
                    std::invalid_argument);
  }
}

TEST_CASE("synthesize places one-hot atoms and rejects bad sizes") {
  auto rng = MakeRng(4);
  auto dict = BuildDictionary(RandomFilterSet(rng, 2, 16), 5, 64);
  SUBCASE("one-hot coefficient places the filter at its offset") {
    Eigen::ArrayXd coeffs = Eigen::ArrayXd::Zero(dict.num_atoms());
    coeffs[dict.FlatIndex(1, 3)] = 2.5;
    const Eigen::ArrayXd s = SynthesizeSignal(dict, coeffs);
    for (int t = 0; t < dict.signal_len; ++t) {
      const int rel = t - 3 * 5;
      const double want =
          (rel >= 0 && rel < 16)
              ? 2.5 * dict.filters.impulse_responses[1][rel]
              : 0.0;
      CHECK(s[t] == doctest::Approx(want).epsilon(1e-15));
    }
  }
  SUBCASE("all-zero coefficients give silence") {
    const Eigen::ArrayXd s =
        SynthesizeSignal(dict, Eigen::ArrayXd::Zero(dict.num_atoms()));
    CHECK((s == 0.0).all());
  }
  SUBCASE("length mismatch is an error") {
    CHECK_THROWS_AS(SynthesizeSignal(dict, Eigen::ArrayXd::Zero(3)),
                    std::invalid_argument);
  }
}

TEST_CASE("gram table matches its structural invariants") {
  auto rng = MakeRng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = RandomTinyInstance(rng);
    const auto& gram = inst.gram;
    const int k = inst.dict.num_channels();
    for (int i = 0; i < k; ++i) {
      CHECK(std::abs(gram.At(i, i, 0) - 1.0) < 1e-10);
      for (int j = 0; j < k; ++j) {
        for (int d = -gram.lag_radius; d <= gram.lag_radius; ++d) {
          CHECK(gram.At(i, j, d) == doctest::Approx(gram.At(j, i, -d))
                                        .epsilon(1e-14));
        }
        // Lags with no overlap are structurally zero.
        CHECK(gram.At(i, j, gram.lag_radius + 1) == 0.0);
        CHECK(gram.At(i, j, -gram.lag_radius - 1) == 0.0);
      }
    }
    // The outermost stored lag still overlaps by construction.
    CHECK(gram.lag_radius * inst.dict.stride < inst.dict.filter_len());
    CHECK((gram.lag_radius + 1) * inst.dict.stride >=
          inst.dict.filter_len());
  }
}

TEST_CASE("inhibit of a single coefficient is a gram column minus itself") {
  auto rng = MakeRng(6);
  auto inst = RandomTinyInstance(rng, 3, 32, 128);
  const int k = inst.dict.num_channels();
  const int shifts = inst.dict.shifts_per_channel;
  const int i = UniformInt(rng, 0, k - 1);
  const int j = UniformInt(rng, 0, shifts - 1);
  SparseCode one;
  one.push(inst.dict.FlatIndex(i, j), 1.5);
  const Eigen::ArrayXd out = Inhibit(inst.dict, inst.gram, one);
  for (int i2 = 0; i2 < k; ++i2) {
    for (int j2 = 0; j2 < shifts; ++j2) {
      double want = 1.5 * inst.gram.At(i2, i, j2 - j);
      if (i2 == i && j2 == j) want -= 1.5;
      CHECK(out[inst.dict.FlatIndex(i2, j2)] ==
            doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("inhibit of an empty set is zero and bad indices throw") {
  auto rng = MakeRng(7);
  auto inst = RandomTinyInstance(rng, 2, 16, 64);
  CHECK((Inhibit(inst.dict, inst.gram, SparseCode{}) == 0.0).all());
  SparseCode bad;
  bad.push(inst.dict.num_atoms(), 1.0);
  CHECK_THROWS_AS(Inhibit(inst.dict, inst.gram, bad), std::out_of_range);
}

TEST_CASE("all four operators agree with the dense oracle") {
  auto rng = MakeRng(8);
  for (int trial = 0; trial < 25; ++trial) {
    auto inst = RandomTinyInstance(rng);
    const Eigen::MatrixXd d = DenseDictionaryMatrix(inst.dict);
    const int n = inst.dict.num_atoms();
    REQUIRE(n <= 4 * 256);

    const Eigen::VectorXd x = RandomSignal(rng, inst.dict.signal_len).matrix();
    const Eigen::VectorXd y = RandomSignal(rng, n).matrix();

    const Eigen::ArrayXd analyze_got = Analyze(inst.dict, x.array());
    const Eigen::ArrayXd analyze_want = (d.transpose() * x).array();
    CHECK((analyze_got - analyze_want).abs().maxCoeff() < 1e-10);

    const Eigen::ArrayXd synth_got = SynthesizeSignal(inst.dict, y.array());
    const Eigen::ArrayXd synth_want = (d * y).array();
    CHECK((synth_got - synth_want).abs().maxCoeff() < 1e-10);

    // Sparse input: threshold the random vector so some entries are zero.
    Eigen::ArrayXd sparse = y.array();
    for (int m = 0; m < n; ++m) {
      if (std::abs(sparse[m]) < 0.5) sparse[m] = 0.0;
    }
    const Eigen::ArrayXd inhibit_got =
        Inhibit(inst.dict, inst.gram, Sparsify(sparse));
    const Eigen::MatrixXd gram_dense = d.transpose() * d;
    const Eigen::ArrayXd inhibit_want =
        (gram_dense * sparse.matrix() - sparse.matrix()).array();
    CHECK((inhibit_got - inhibit_want).abs().maxCoeff() < 1e-10);

    // Gram table against dense block extraction.
    const int k = inst.dict.num_channels();
    const int shifts = inst.dict.shifts_per_channel;
    for (int i = 0; i < k; ++i) {
      for (int i2 = 0; i2 < k; ++i2) {
        for (int j2 = 0; j2 < shifts; ++j2) {
          const double want =
              gram_dense(inst.dict.FlatIndex(i, 0), inst.dict.FlatIndex(i2, j2));
          // <atom(i, 0), atom(i2, j2)> = At(i2, i, j2).
          CHECK(std::abs(inst.gram.At(i2, i, j2) - want) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("analyze and synthesize are exact transposes") {
  auto rng = MakeRng(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = RandomTinyInstance(rng);
    const Eigen::ArrayXd x = RandomSignal(rng, inst.dict.signal_len);
    const Eigen::ArrayXd y = RandomSignal(rng, inst.dict.num_atoms());
    const double lhs = (Analyze(inst.dict, x) * y).sum();
    const double rhs = (x * SynthesizeSignal(inst.dict, y)).sum();
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}
