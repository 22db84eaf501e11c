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

#include "atg/noise.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"

namespace atg {
namespace {

TEST(SampleError, ZeroAndOne) {
  const AtgGraph g = build_atg(fixtures::steane(), 2);
  const MeasurementPattern pat = bell_pattern(g);
  EXPECT_EQ(sample_error(g, pat, {0.0, 1, NoiseModel::IidZ}, 0).weight(), 0);
  EXPECT_EQ(sample_error(g, pat, {1.0, 1, NoiseModel::IidZ}, 0).weight(),
            pat.measured_count());
}

TEST(SampleError, BinomialMeanWithin3Sigma) {
  const AtgGraph g = build_atg(fixtures::steane(), 2);
  const MeasurementPattern pat = bell_pattern(g);
  const NoiseConfig cfg{0.1, 42, NoiseModel::IidZ};
  const int samples = 10000;
  std::int64_t total = 0;
  for (int t = 0; t < samples; ++t)
    total += sample_error(g, pat, cfg, static_cast<std::uint64_t>(t)).weight();
  const double mean = static_cast<double>(total) / samples;
  const double expect = 0.1 * pat.measured_count();
  const double sigma =
      std::sqrt(pat.measured_count() * 0.1 * 0.9 / samples);
  EXPECT_NEAR(mean, expect, 3 * sigma);
}

TEST(SampleError, ReproducibleBitForBit) {
  const AtgGraph g = build_atg(fixtures::hgp13(), 2);
  const MeasurementPattern pat = bell_pattern(g);
  const NoiseConfig cfg{0.2, 1234, NoiseModel::IidZ};
  const ErrorPattern a = sample_error(g, pat, cfg, 7);
  const ErrorPattern b = sample_error(g, pat, cfg, 7);
  EXPECT_EQ(a.bits, b.bits);
  const ErrorPattern c = sample_error(g, pat, cfg, 8);
  EXPECT_NE(a.bits, c.bits);  // different trial, different stream
}

TEST(SampleError, RejectsBadRate) {
  const AtgGraph g = build_atg(fixtures::code_422(), 1);
  const MeasurementPattern pat = bell_pattern(g);
  EXPECT_THROW(sample_error(g, pat, {-0.1, 0, NoiseModel::IidZ}, 0), ValidationError);
}

TEST(LsBound, SingletonsMatchRate) {
  const AtgGraph g = build_atg(fixtures::steane(), 1);
  const MeasurementPattern pat = bell_pattern(g);
  std::vector<std::vector<int>> subsets;
  for (int i = 0; i < 5; ++i) subsets.push_back({pat.measured_ords[i]});
  const auto rep = verify_ls_bound(g, pat, {0.2, 5, NoiseModel::IidZ}, subsets, 20000);
  for (const auto& e : rep.entries) {
    EXPECT_NEAR(e.empirical, 0.2, 0.02);
    EXPECT_FALSE(e.flagged);
  }
}

TEST(LsBound, PairsMatchProductRate) {
  const AtgGraph g = build_atg(fixtures::steane(), 1);
  const MeasurementPattern pat = bell_pattern(g);
  std::vector<std::vector<int>> subsets;
  for (int i = 0; i + 1 < 8; i += 2)
    subsets.push_back({pat.measured_ords[i], pat.measured_ords[i + 1]});
  const auto rep = verify_ls_bound(g, pat, {0.2, 6, NoiseModel::IidZ}, subsets, 20000);
  for (const auto& e : rep.entries) {
    EXPECT_NEAR(e.empirical, 0.04, 0.01);
    EXPECT_FALSE(e.flagged);
  }
  EXPECT_FALSE(rep.any_flagged);
}

TEST(LsBound, ZeroRateGivesZeroFrequencies) {
  const AtgGraph g = build_atg(fixtures::code_422(), 1);
  const MeasurementPattern pat = bell_pattern(g);
  const auto rep =
      verify_ls_bound(g, pat, {0.0, 7, NoiseModel::IidZ}, {{pat.measured_ords[0]}}, 100);
  EXPECT_EQ(rep.entries[0].empirical, 0.0);
}

TEST(LsBound, EmptySubsetsRejected) {
  const AtgGraph g = build_atg(fixtures::code_422(), 1);
  const MeasurementPattern pat = bell_pattern(g);
  EXPECT_THROW(verify_ls_bound(g, pat, {0.1, 0, NoiseModel::IidZ}, {}, 10),
               ValidationError);
}

}  // namespace
}  // namespace atg
