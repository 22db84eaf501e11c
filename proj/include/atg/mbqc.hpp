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

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "atg/css_code.hpp"
#include "atg/noise.hpp"
#include "atg/errors.hpp"
#include "atg/gf2.hpp"
#include "atg/rng.hpp"

namespace atg {

// Frame convention throughout this module: every measured record is the
// parity relative to the noiseless reference outcome, so a noiseless run is
// identically zero and the random syndrome gauge drops out of equality
// checks.

/// T rounds of repeated Z and X syndrome measurement, frame-simulated.
/// f_code_x / f_code_z are the data errors injected during round j (before
/// that round's measurements); f_z / f_x flip the round's check outcomes.
struct RepeatedMeasRecord {
  std::vector<BitVector> s_z, s_x;            // T syndromes each
  std::vector<BitVector> f_code_x, f_code_z;  // per-round data errors (n)
  std::vector<BitVector> f_z, f_x;            // per-round check flips (mz / mx)
};

inline RepeatedMeasRecord simulate_repeated(const CssCode& code, int T,
                                            const NoiseConfig& cfg,
                                            std::uint64_t trial) {
  Rng rng(trial_seed(cfg.seed, 1, trial));
  RepeatedMeasRecord r;
  auto sample = [&](int len) {
    BitVector v(len);
    for (int i = 0; i < len; ++i)
      if (rng.bernoulli(cfg.p)) v.set(i);
    return v;
  };
  BitVector cum_x(code.n), cum_z(code.n);
  for (int j = 0; j < T; ++j) {
    r.f_code_x.push_back(sample(code.n));
    r.f_code_z.push_back(sample(code.n));
    r.f_z.push_back(sample(code.mz));
    r.f_x.push_back(sample(code.mx));
    cum_x ^= r.f_code_x.back();
    cum_z ^= r.f_code_z.back();
    r.s_z.push_back(syndrome_z(code, cum_x) ^ r.f_z.back());
    r.s_x.push_back(syndrome_x(code, cum_z) ^ r.f_x.back());
  }
  return r;
}

/// The one-shot measurement record of the foliated circuit: 2T-1 measured
/// code layers (the 2T-th carries the output), T X-check and T Z-check
/// layers. In frame convention the record equals the bit-flip error on it.
struct FoliatedRecord {
  std::vector<BitVector> z_code;  // 2T-1, length n
  std::vector<BitVector> z_x;     // T, length mx
  std::vector<BitVector> z_z;     // T, length mz

  int rounds() const { return static_cast<int>(z_x.size()); }
};

inline FoliatedRecord sample_foliated(const CssCode& code, int T,
                                      const NoiseConfig& cfg,
                                      std::uint64_t trial) {
  Rng rng(trial_seed(cfg.seed, 2, trial));
  FoliatedRecord r;
  auto sample = [&](int len) {
    BitVector v(len);
    for (int i = 0; i < len; ++i)
      if (rng.bernoulli(cfg.p)) v.set(i);
    return v;
  };
  for (int l = 0; l < 2 * T - 1; ++l) r.z_code.push_back(sample(code.n));
  for (int j = 0; j < T; ++j) r.z_x.push_back(sample(code.mx));
  for (int j = 0; j < T; ++j) r.z_z.push_back(sample(code.mz));
  return r;
}

/// Outcome translation: subtract the syndromes of the accumulated
/// teleportation Pauli shifts,
///   s_Z^j = z_Z^j + Syn_Z(sum_{i<=j} z_code^{2i-1})
///   s_X^j = z_X^j + Syn_X(sum_{i<j}  z_code^{2i}),
/// so the repeated-measurement frame logic can consume the one-shot record.
/// (The X-round shift sum runs over even layers strictly below the round's
/// check layer; odd code layers carry X-type shifts, even layers Z-type.)
inline std::pair<std::vector<BitVector>, std::vector<BitVector>> foliate_outcomes(
    const CssCode& code, const FoliatedRecord& rec) {
  const int T = rec.rounds();
  if (static_cast<int>(rec.z_code.size()) != 2 * T - 1 ||
      static_cast<int>(rec.z_z.size()) != T)
    throw ValidationError("foliate_outcomes: record shape mismatch");
  std::vector<BitVector> s_x, s_z;
  BitVector shift_x(code.n), shift_z(code.n);
  for (int j = 1; j <= T; ++j) {
    // z_code layers are 1-based in the formulas: layer 2j-1 has index 2j-2,
    // layer 2j-2 has index 2j-3.
    shift_x ^= rec.z_code[2 * j - 2];
    if (j >= 2) shift_z ^= rec.z_code[2 * j - 3];
    s_z.push_back(rec.z_z[j - 1] ^ syndrome_z(code, shift_x));
    s_x.push_back(rec.z_x[j - 1] ^ syndrome_x(code, shift_z));
  }
  return {s_x, s_z};
}

/// Rounds (1-based j >= 2) where the foliation recurrence fails, per side.
struct RecurrenceFailures {
  std::vector<int> z_rounds, x_rounds;

  bool empty() const { return z_rounds.empty() && x_rounds.empty(); }
};

/// The syndrome recurrence of the foliation bridge:
///   s_Z^j + f_Z^j = s_Z^{j-1} + f_Z^{j-1} + Syn_Z(f_code^{2j-1})
/// and the X analogue with the even-layer error one step behind. `f` is the
/// bit-flip error that produced the record (equal to it in frame convention,
/// but passed separately so corrupted records can be probed).
inline RecurrenceFailures recurrence_failures(const CssCode& code,
                                              const FoliatedRecord& rec,
                                              const FoliatedRecord& f) {
  const int T = rec.rounds();
  auto [s_x, s_z] = foliate_outcomes(code, rec);
  RecurrenceFailures fails;
  for (int j = 2; j <= T; ++j) {
    const BitVector lhs_z = s_z[j - 1] ^ f.z_z[j - 1];
    const BitVector rhs_z =
        s_z[j - 2] ^ f.z_z[j - 2] ^ syndrome_z(code, f.z_code[2 * j - 2]);
    if (lhs_z != rhs_z) fails.z_rounds.push_back(j);
    const BitVector lhs_x = s_x[j - 1] ^ f.z_x[j - 1];
    const BitVector rhs_x =
        s_x[j - 2] ^ f.z_x[j - 2] ^ syndrome_x(code, f.z_code[2 * j - 3]);
    if (lhs_x != rhs_x) fails.x_rounds.push_back(j);
  }
  return fails;
}

inline bool verify_recurrence(const CssCode& code, const FoliatedRecord& rec,
                              const FoliatedRecord& f) {
  return recurrence_failures(code, rec, f).empty();
}

}  // namespace atg
