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
#include <vector>

#include "atg/decoder.hpp"
#include "atg/stabilizers.hpp"

namespace atg {

/// m unmeasured odd layers i_1 < ... < i_m with i_1 = 1, i_m = 2T+1.
/// The post-measurement state carries one code block per layer; decoding
/// turns it into the encoded m-partite GHZ state.
struct GhzPattern {
  int m = 0;
  std::vector<int> layers;
  int delta = 0;  // min gap between consecutive layers
};

/// Evenly spaced odd layers, maximizing the minimum gap. Deterministic:
/// layer j sits at 1 + 2*round((j-1) * T / (m-1)).
inline GhzPattern ghz_layers(int T, int m) {
  if (m < 2) throw InfeasibleError("ghz_layers: m must be >= 2");
  if (T < m - 1)
    throw InfeasibleError("ghz_layers: 2T+1 layers admit at most T+1 odd layers; need T >= m-1");
  GhzPattern p;
  p.m = m;
  for (int j = 0; j < m; ++j) {
    const auto step = static_cast<long long>(
        std::llround(static_cast<double>(j) * T / (m - 1)));
    p.layers.push_back(1 + 2 * static_cast<int>(step));
  }
  p.delta = 2 * T;
  for (int j = 0; j + 1 < m; ++j)
    p.delta = std::min(p.delta, p.layers[j + 1] - p.layers[j]);
  return p;
}

/// The GHZ stabilizer structure (built independently of the Bell factory so
/// the two can cross-check each other at m=2):
///  S0: all Z meta-checks plus the X meta-checks at measured interior odd
///      layers; the ones at unmeasured layers are consumed as per-layer
///      X checks.
///  S1: per-layer X and Z code checks at every unmeasured layer, one global
///      X logical element per logical qubit, and one ZZ element per logical
///      qubit and consecutive layer pair.
inline StabilizerSet make_ghz_set(const AtgGraph& g, const GhzPattern& pattern,
                                  const LogicalBasis& lb) {
  const CssCode& code = g.code;
  const int nv = g.num_vertices();
  const int top = g.num_layers();
  if (pattern.layers.empty() || pattern.layers.front() != 1 || pattern.layers.back() != top)
    throw InfeasibleError("GHZ pattern must span layers 1 .. 2T+1");

  StabilizerSet set;
  set.pattern = layers_pattern(g, pattern.layers);
  auto unmeasured = [&](int layer) { return set.pattern.surface_of_layer(layer) >= 0; };

  // S0: Z metas everywhere, X metas at measured interior odd layers.
  for (int t = 2; t <= 2 * g.T; t += 2)
    for (int c = 0; c < code.mz; ++c) {
      StabilizerElement e{ElemKind::MetaCheckZ, c, t};
      e.x_support = BitVector(nv);
      e.z_support = BitVector(nv);
      e.generators = {g.ordinal(VKind::ZCheck, c, t - 1), g.ordinal(VKind::ZCheck, c, t + 1)};
      for (std::size_t i : code.hz.row(c).ones())
        e.generators.push_back(g.ordinal(VKind::CodeQubit, static_cast<int>(i), t));
      for (int u : e.generators) e.x_support.set(u);
      detail::check_element(g, e);
      set.s0_raw.push_back(std::move(e));
    }
  for (int t = 3; t <= 2 * g.T - 1; t += 2) {
    if (unmeasured(t)) continue;
    for (int c = 0; c < code.mx; ++c) {
      StabilizerElement e{ElemKind::MetaCheckX, c, t};
      e.x_support = BitVector(nv);
      e.z_support = BitVector(nv);
      e.generators = {g.ordinal(VKind::XCheck, c, t - 1), g.ordinal(VKind::XCheck, c, t + 1)};
      for (std::size_t i : code.hx.row(c).ones())
        e.generators.push_back(g.ordinal(VKind::CodeQubit, static_cast<int>(i), t));
      for (int u : e.generators) e.x_support.set(u);
      detail::check_element(g, e);
      set.s0_raw.push_back(std::move(e));
    }
  }

  // S1 per-layer code checks, in-plane forms.
  for (int j = 0; j < pattern.m; ++j) {
    const int layer = pattern.layers[j];
    for (int c = 0; c < code.mz; ++c) {
      StabilizerElement e{ElemKind::BoundaryZCheck, c, layer, j};
      e.x_support = BitVector(nv);
      e.z_support = BitVector(nv);
      e.generators = {g.ordinal(VKind::ZCheck, c, layer)};
      e.x_support.set(e.generators[0]);
      for (std::size_t i : code.hz.row(c).ones())
        e.z_support.set(g.ordinal(VKind::CodeQubit, static_cast<int>(i), layer));
      detail::check_element(g, e);
      set.s1_raw.push_back(std::move(e));
    }
    for (int c = 0; c < code.mx; ++c) {
      StabilizerElement e{ElemKind::BoundaryXCheck, c, layer, j};
      e.x_support = BitVector(nv);
      e.z_support = BitVector(nv);
      // Interior layers get the two-sided meta-check form; the end layers
      // the one-sided boundary form.
      if (layer > 1) e.generators.push_back(g.ordinal(VKind::XCheck, c, layer - 1));
      if (layer < top) e.generators.push_back(g.ordinal(VKind::XCheck, c, layer + 1));
      for (std::size_t i : code.hx.row(c).ones())
        e.generators.push_back(g.ordinal(VKind::CodeQubit, static_cast<int>(i), layer));
      for (int u : e.generators) e.x_support.set(u);
      detail::check_element(g, e);
      set.s1_raw.push_back(std::move(e));
    }
  }

  // Global X logical per logical qubit.
  for (int q = 0; q < code.k; ++q) {
    StabilizerElement e{ElemKind::LogicalXX, q, 0};
    e.x_support = BitVector(nv);
    e.z_support = BitVector(nv);
    for (int t = 1; t <= top; t += 2)
      for (std::size_t i : lb.x[q].ones())
        e.generators.push_back(g.ordinal(VKind::CodeQubit, static_cast<int>(i), t));
    for (int u : e.generators) e.x_support.set(u);
    detail::check_element(g, e);
    set.s1_raw.push_back(std::move(e));
  }
  // Pairwise ZZ between consecutive unmeasured layers.
  for (int j = 0; j + 1 < pattern.m; ++j) {
    const int lo = pattern.layers[j], hi = pattern.layers[j + 1];
    for (int q = 0; q < code.k; ++q) {
      StabilizerElement e{ElemKind::LogicalZZ, q, lo, j};
      e.x_support = BitVector(nv);
      e.z_support = BitVector(nv);
      for (int t = lo + 1; t < hi; t += 2)
        for (std::size_t i : lb.z[q].ones())
          e.generators.push_back(g.ordinal(VKind::CodeQubit, static_cast<int>(i), t));
      for (int u : e.generators) e.x_support.set(u);
      for (std::size_t i : lb.z[q].ones()) {
        e.z_support.set(g.ordinal(VKind::CodeQubit, static_cast<int>(i), lo));
        e.z_support.set(g.ordinal(VKind::CodeQubit, static_cast<int>(i), hi));
      }
      detail::check_element(g, e);
      set.s1_raw.push_back(std::move(e));
    }
  }

  for (const auto& e : set.s0_raw)
    set.s0.push_back(detail::compile_elem(g, set.pattern, e, true));
  for (const auto& e : set.s1_raw)
    set.s1.push_back(detail::compile_elem(g, set.pattern, e, false));
  detail::index_s1_groups(set, code, code.k);
  return set;
}

/// GHZ trial: the Bell pipeline with the GHZ stabilizer set, per-surface
/// repairs and pairwise logical flags.
inline TrialOutcome run_ghz_trial(const TrialContext& ctx, std::uint64_t trial) {
  return run_trial(ctx, trial);
}

}  // namespace atg
