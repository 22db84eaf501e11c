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

#include <cmath>
#include <cstdint>
#include <vector>

#include "atg/atg_graph.hpp"
#include "atg/errors.hpp"
#include "atg/gf2.hpp"
#include "atg/rng.hpp"

namespace atg {

enum class NoiseModel : std::uint8_t { IidZ };

struct NoiseConfig {
  double p = 0.0;
  std::uint64_t seed = 0;  // master seed; per-trial streams are split from it
  NoiseModel model = NoiseModel::IidZ;
};

/// The effective bulk error: a Z flip pattern over the measured qubits, in
/// canonical measured-coordinate order. Unmeasured (boundary) qubits carry
/// no sampled noise; see the docs for why that is the model the recovery
/// contract works with.
struct ErrorPattern {
  BitVector bits;  // over measured coords

  int weight() const { return static_cast<int>(bits.weight()); }
};

/// Iid Z flips at rate p on every measured qubit. Deterministic given the
/// rng seed; one draw per measured coordinate in canonical order.
inline ErrorPattern sample_error(const AtgGraph& g, const MeasurementPattern& pat,
                                 const NoiseConfig& cfg, Rng& rng) {
  (void)g;
  if (cfg.p < 0.0 || cfg.p > 1.0) throw ValidationError("noise rate must be in [0,1]");
  ErrorPattern e{BitVector(pat.measured_count())};
  for (int i = 0; i < pat.measured_count(); ++i)
    if (rng.bernoulli(cfg.p)) e.bits.set(i);
  return e;
}

inline ErrorPattern sample_error(const AtgGraph& g, const MeasurementPattern& pat,
                                 const NoiseConfig& cfg, std::uint64_t trial) {
  Rng rng(trial_seed(cfg.seed, 0, trial));
  return sample_error(g, pat, cfg, rng);
}

/// Empirical check of the local stochastic bound P[S subset supp(E)] <= p^|S|.
struct LsBoundEntry {
  std::vector<int> subset;  // vertex ordinals
  double empirical = 0.0;
  double bound = 0.0;   // p^|S|
  double sigma = 0.0;   // binomial std dev of the estimator at the bound
  bool flagged = false;  // empirical exceeds bound by more than 4 sigma
};

struct LsBoundReport {
  std::vector<LsBoundEntry> entries;
  int samples = 0;
  bool any_flagged = false;
};

inline LsBoundReport verify_ls_bound(const AtgGraph& g, const MeasurementPattern& pat,
                                     const NoiseConfig& cfg,
                                     const std::vector<std::vector<int>>& subsets,
                                     int samples) {
  if (subsets.empty()) throw ValidationError("verify_ls_bound: no subsets given");
  LsBoundReport rep;
  rep.samples = samples;
  std::vector<std::vector<int>> coords;
  for (const auto& s : subsets) {
    coords.emplace_back();
    for (int v : s) {
      internal_assert(pat.is_measured[v], "ls-bound subset touches an unmeasured qubit");
      coords.back().push_back(pat.meas_index[v]);
    }
  }
  std::vector<std::int64_t> hits(subsets.size(), 0);
  for (int t = 0; t < samples; ++t) {
    ErrorPattern e = sample_error(g, pat, cfg, static_cast<std::uint64_t>(t));
    for (std::size_t s = 0; s < coords.size(); ++s) {
      bool all = true;
      for (int c : coords[s])
        if (!e.bits.get(c)) {
          all = false;
          break;
        }
      if (all) ++hits[s];
    }
  }
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    LsBoundEntry ent;
    ent.subset = subsets[s];
    ent.empirical = static_cast<double>(hits[s]) / samples;
    ent.bound = std::pow(cfg.p, static_cast<double>(subsets[s].size()));
    ent.sigma = std::sqrt(std::max(ent.bound * (1.0 - ent.bound), 1e-12) / samples);
    ent.flagged = ent.empirical > ent.bound + 4.0 * ent.sigma;
    rep.any_flagged |= ent.flagged;
    rep.entries.push_back(std::move(ent));
  }
  return rep;
}

}  // namespace atg
