// Copyright 2026 The atgsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "atg/mbqc.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace atg {
namespace {

TEST(SimulateRepeated, NoiselessIsAllZero) {
  const CssCode c = fixtures::code_422();
  const auto r = simulate_repeated(c, 3, {0.0, 1, NoiseModel::IidZ}, 0);
  for (const auto& s : r.s_z) EXPECT_TRUE(s.none());
  for (const auto& s : r.s_x) EXPECT_TRUE(s.none());
}

TEST(SimulateRepeated, SingleDataErrorPropagatesForward) {
  // Inject one X data error in round j: s_z^i flips by Syn_Z(e) for i >= j.
  const CssCode c = fixtures::steane();
  const int T = 4, j = 1;  // round indices 0-based
  RepeatedMeasRecord r;
  BitVector e(c.n);
  e.set(2);
  for (int round = 0; round < T; ++round) {
    r.f_code_x.push_back(round == j ? e : BitVector(c.n));
    r.f_code_z.push_back(BitVector(c.n));
    r.f_z.push_back(BitVector(c.mz));
    r.f_x.push_back(BitVector(c.mx));
  }
  BitVector cum(c.n);
  for (int round = 0; round < T; ++round) {
    cum ^= r.f_code_x[round];
    r.s_z.push_back(syndrome_z(c, cum));
    r.s_x.push_back(BitVector(c.mx));
  }
  for (int round = 0; round < T; ++round) {
    if (round < j)
      EXPECT_TRUE(r.s_z[round].none());
    else
      EXPECT_EQ(r.s_z[round], syndrome_z(c, e));
  }
}

TEST(SimulateRepeated, SingleCheckFlipIsLocal) {
  const CssCode c = fixtures::code_422();
  const int T = 3;
  // Build by hand: one f_z flip in round 1 flips only s_z^1.
  BitVector flip(c.mz);
  flip.set(0);
  std::vector<BitVector> s_z;
  BitVector cum(c.n);
  for (int round = 0; round < T; ++round) {
    BitVector s = syndrome_z(c, cum);
    if (round == 1) s ^= flip;
    s_z.push_back(s);
  }
  EXPECT_TRUE(s_z[0].none());
  EXPECT_FALSE(s_z[1].none());
  EXPECT_TRUE(s_z[2].none());
}

TEST(SimulateRepeated, DeterministicPerSeed) {
  const CssCode c = fixtures::steane();
  const auto a = simulate_repeated(c, 3, {0.1, 9, NoiseModel::IidZ}, 5);
  const auto b = simulate_repeated(c, 3, {0.1, 9, NoiseModel::IidZ}, 5);
  EXPECT_EQ(a.s_z[2], b.s_z[2]);
  EXPECT_EQ(a.f_code_x[1], b.f_code_x[1]);
}

TEST(Foliate, AllZeroRecordGivesZeroSyndromes) {
  const CssCode c = fixtures::code_422();
  FoliatedRecord r;
  const int T = 3;
  for (int l = 0; l < 2 * T - 1; ++l) r.z_code.push_back(BitVector(c.n));
  for (int j = 0; j < T; ++j) r.z_x.push_back(BitVector(c.mx));
  for (int j = 0; j < T; ++j) r.z_z.push_back(BitVector(c.mz));
  const auto [s_x, s_z] = foliate_outcomes(c, r);
  for (const auto& s : s_x) EXPECT_TRUE(s.none());
  for (const auto& s : s_z) EXPECT_TRUE(s.none());
}

TEST(Foliate, FirstLayerErrorShiftsAllZRounds) {
  const CssCode c = fixtures::steane();
  const int T = 3;
  FoliatedRecord r;
  for (int l = 0; l < 2 * T - 1; ++l) r.z_code.push_back(BitVector(c.n));
  for (int j = 0; j < T; ++j) r.z_x.push_back(BitVector(c.mx));
  for (int j = 0; j < T; ++j) r.z_z.push_back(BitVector(c.mz));
  BitVector e(c.n);
  e.set(3);
  r.z_code[0] = e;  // layer 1
  const auto [s_x, s_z] = foliate_outcomes(c, r);
  for (int j = 0; j < T; ++j) EXPECT_EQ(s_z[j], syndrome_z(c, e)) << "round " << j;
  for (int j = 0; j < T; ++j) EXPECT_TRUE(s_x[j].none());
}

TEST(Foliate, PrefixSumsMatchNaiveSums) {
  const CssCode c = fixtures::code_422();
  const int T = 4;
  const FoliatedRecord r = sample_foliated(c, T, {0.3, 13, NoiseModel::IidZ}, 0);
  const auto [s_x, s_z] = foliate_outcomes(c, r);
  for (int j = 1; j <= T; ++j) {
    BitVector sum_odd(c.n), sum_even(c.n);
    for (int i = 1; i <= j; ++i) sum_odd ^= r.z_code[2 * i - 2];
    for (int i = 1; i < j; ++i) sum_even ^= r.z_code[2 * i - 1];
    EXPECT_EQ(s_z[j - 1], r.z_z[j - 1] ^ syndrome_z(c, sum_odd));
    EXPECT_EQ(s_x[j - 1], r.z_x[j - 1] ^ syndrome_x(c, sum_even));
  }
}

TEST(Foliate, Linearity) {
  const CssCode c = fixtures::steane();
  const int T = 3;
  const NoiseConfig cfg{0.25, 19, NoiseModel::IidZ};
  for (int it = 0; it < 1000; ++it) {
    const FoliatedRecord a = sample_foliated(c, T, cfg, 2 * it);
    const FoliatedRecord b = sample_foliated(c, T, cfg, 2 * it + 1);
    FoliatedRecord sum = a;
    for (int l = 0; l < 2 * T - 1; ++l) sum.z_code[l] ^= b.z_code[l];
    for (int j = 0; j < T; ++j) {
      sum.z_x[j] ^= b.z_x[j];
      sum.z_z[j] ^= b.z_z[j];
    }
    const auto [ax, az] = foliate_outcomes(c, a);
    const auto [bx, bz] = foliate_outcomes(c, b);
    const auto [sx, sz] = foliate_outcomes(c, sum);
    for (int j = 0; j < T; ++j) {
      EXPECT_EQ(sx[j], ax[j] ^ bx[j]);
      EXPECT_EQ(sz[j], az[j] ^ bz[j]);
    }
  }
}

TEST(Recurrence, HoldsOnNoisyRuns) {
  const CssCode c = fixtures::code_422();
  const int T = 3;
  const NoiseConfig cfg{0.2, 29, NoiseModel::IidZ};
  for (int it = 0; it < 500; ++it) {
    const FoliatedRecord r = sample_foliated(c, T, cfg, it);
    EXPECT_TRUE(verify_recurrence(c, r, r));  // frame convention: z == f
  }
}

TEST(Recurrence, NoiselessTrivially) {
  const CssCode c = fixtures::code_422();
  const FoliatedRecord r = sample_foliated(c, 3, {0.0, 1, NoiseModel::IidZ}, 0);
  EXPECT_TRUE(verify_recurrence(c, r, r));
}

TEST(Recurrence, CorruptedCodeBitBreaksExactlyOneRound) {
  const CssCode c = fixtures::code_422();
  const int T = 4;
  const FoliatedRecord r = sample_foliated(c, T, {0.1, 37, NoiseModel::IidZ}, 3);
  ASSERT_TRUE(verify_recurrence(c, r, r));
  // Corrupt one f bit on odd code layer 3: only the round-2 Z relation
  // involves f_code^3.
  FoliatedRecord f = r;
  f.z_code[2].flip(0);
  const auto fails = recurrence_failures(c, r, f);
  EXPECT_EQ(fails.z_rounds, (std::vector<int>{2}));
  EXPECT_TRUE(fails.x_rounds.empty());
}

TEST(Recurrence, CorruptedCheckFlipBreaksAdjacentPair) {
  const CssCode c = fixtures::code_422();
  const int T = 4;
  const FoliatedRecord r = sample_foliated(c, T, {0.1, 41, NoiseModel::IidZ}, 4);
  ASSERT_TRUE(verify_recurrence(c, r, r));
  // An f flip on round 2's Z checks sits in the j=2 and j=3 relations.
  FoliatedRecord f = r;
  f.z_z[1].flip(0);
  const auto fails = recurrence_failures(c, r, f);
  EXPECT_EQ(fails.z_rounds, (std::vector<int>{2, 3}));
  EXPECT_TRUE(fails.x_rounds.empty());
}

// The outcome-translation bijection: a single bit flip on the foliated
// record maps to a single error location in the repeated-measurement
// protocol with identical syndrome records, for every location.
TEST(Bijection, SingleErrorDistributionsMatch) {
  const CssCode c = fixtures::code_422();
  const int T = 2;

  auto repeated_syndromes = [&](const std::vector<BitVector>& fcx,
                                const std::vector<BitVector>& fcz,
                                const std::vector<BitVector>& fz,
                                const std::vector<BitVector>& fx) {
    std::vector<BitVector> s_z, s_x;
    BitVector cx(c.n), cz(c.n);
    for (int j = 0; j < T; ++j) {
      cx ^= fcx[j];
      cz ^= fcz[j];
      s_z.push_back(syndrome_z(c, cx) ^ fz[j]);
      s_x.push_back(syndrome_x(c, cz) ^ fx[j]);
    }
    std::pair<std::vector<BitVector>, std::vector<BitVector>> out{s_x, s_z};
    return out;
  };

  auto zero_record = [&] {
    FoliatedRecord r;
    for (int l = 0; l < 2 * T - 1; ++l) r.z_code.push_back(BitVector(c.n));
    for (int j = 0; j < T; ++j) r.z_x.push_back(BitVector(c.mx));
    for (int j = 0; j < T; ++j) r.z_z.push_back(BitVector(c.mz));
    return r;
  };
  auto zero_rounds_n = [&] { return std::vector<BitVector>(T, BitVector(c.n)); };
  auto zero_rounds_mz = [&] { return std::vector<BitVector>(T, BitVector(c.mz)); };
  auto zero_rounds_mx = [&] { return std::vector<BitVector>(T, BitVector(c.mx)); };

  // Code-layer flips: odd layer 2i-1 <-> round-i X data error; even layer
  // 2i <-> round-(i+1) Z data error.
  for (int l = 1; l <= 2 * T - 1; ++l) {
    for (int q = 0; q < c.n; ++q) {
      FoliatedRecord r = zero_record();
      r.z_code[l - 1].set(q);
      const auto [fx_s, fz_s] = foliate_outcomes(c, r);
      auto fcx = zero_rounds_n();
      auto fcz = zero_rounds_n();
      if (l % 2 == 1)
        fcx[(l + 1) / 2 - 1].set(q);
      else
        fcz[l / 2].set(q);  // round (l/2)+1, 0-based index l/2
      const auto [rx_s, rz_s] = repeated_syndromes(fcx, fcz, zero_rounds_mz(), zero_rounds_mx());
      EXPECT_EQ(fx_s, rx_s) << "layer " << l << " qubit " << q;
      EXPECT_EQ(fz_s, rz_s) << "layer " << l << " qubit " << q;
    }
  }
  // Check-outcome flips map to measurement errors of the same round.
  for (int j = 0; j < T; ++j) {
    for (int cc = 0; cc < c.mz; ++cc) {
      FoliatedRecord r = zero_record();
      r.z_z[j].set(cc);
      const auto [fx_s, fz_s] = foliate_outcomes(c, r);
      auto fz = zero_rounds_mz();
      fz[j].set(cc);
      const auto [rx_s, rz_s] =
          repeated_syndromes(zero_rounds_n(), zero_rounds_n(), fz, zero_rounds_mx());
      EXPECT_EQ(fx_s, rx_s);
      EXPECT_EQ(fz_s, rz_s);
    }
    for (int cc = 0; cc < c.mx; ++cc) {
      FoliatedRecord r = zero_record();
      r.z_x[j].set(cc);
      const auto [fx_s, fz_s] = foliate_outcomes(c, r);
      auto fx = zero_rounds_mx();
      fx[j].set(cc);
      const auto [rx_s, rz_s] =
          repeated_syndromes(zero_rounds_n(), zero_rounds_n(), zero_rounds_mz(), fx);
      EXPECT_EQ(fx_s, rx_s);
      EXPECT_EQ(fz_s, rz_s);
    }
  }
}

TEST(Foliate, ShapeMismatchRejected) {
  const CssCode c = fixtures::code_422();
  FoliatedRecord r;
  r.z_code.push_back(BitVector(c.n));  // wrong: needs 2T-1 = 3 layers for T=2
  r.z_x.assign(2, BitVector(c.mx));
  r.z_z.assign(2, BitVector(c.mz));
  EXPECT_THROW(foliate_outcomes(c, r), ValidationError);
}

}  // namespace
}  // namespace atg
