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

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "atg/css_code.hpp"
#include "atg/errors.hpp"

namespace atg {

enum class VKind : std::uint8_t { CodeQubit, XCheck, ZCheck };

inline const char* to_string(VKind k) {
  switch (k) {
    case VKind::CodeQubit: return "code";
    case VKind::XCheck: return "xcheck";
    case VKind::ZCheck: return "zcheck";
  }
  return "?";
}

/// (kind, index, layer) with layers 1..2T+1. Z checks live on odd layers,
/// X checks on even layers.
struct VertexId {
  VKind kind;
  int index;  // qubit i in [0,n) or check c in [0,m)
  int layer;  // 1-based

  bool operator==(const VertexId&) const = default;
};

/// The layered cluster-state graph: 2T+1 copies of the code qubits with
/// vertical links, a Z Tanner graph on every odd layer and an X Tanner graph
/// on every even layer. Immutable after build; vertex order is layer-major
/// with code qubits before checks, indices ascending.
struct AtgGraph {
  CssCode code;
  int T = 0;
  std::vector<VertexId> vertices;
  std::vector<std::vector<int>> adj;        // sorted neighbor ordinals
  std::vector<std::pair<int, int>> edges;   // u < v, sorted

  int num_layers() const { return 2 * T + 1; }
  int num_vertices() const { return static_cast<int>(vertices.size()); }

  int layer_offset(int layer) const {
    // Layers alternate sizes n+m_z (odd) and n+m_x (even).
    const int full_pairs = (layer - 1) / 2;
    int off = full_pairs * (2 * code.n + code.mz + code.mx);
    if (layer % 2 == 0) off += code.n + code.mz;
    return off;
  }

  int ordinal(VKind kind, int index, int layer) const {
    const int off = layer_offset(layer);
    return kind == VKind::CodeQubit ? off + index : off + code.n + index;
  }

  int ordinal(const VertexId& v) const { return ordinal(v.kind, v.index, v.layer); }

  int max_degree() const {
    std::size_t d = 0;
    for (const auto& a : adj) d = std::max(d, a.size());
    return static_cast<int>(d);
  }

  /// Stable textual form used by the ordering-stability tests.
  std::string serialize() const {
    std::string s;
    for (const auto& v : vertices) {
      s += to_string(v.kind);
      s += ':' + std::to_string(v.index) + ':' + std::to_string(v.layer) + ';';
    }
    for (const auto& [u, w] : edges) s += std::to_string(u) + '-' + std::to_string(w) + ';';
    return s;
  }
};

inline AtgGraph build_atg(const CssCode& code, int T) {
  if (T < 1) throw ValidationError("build_atg: T must be >= 1");
  AtgGraph g;
  g.code = code;
  g.T = T;
  const int layers = 2 * T + 1;
  for (int t = 1; t <= layers; ++t) {
    for (int i = 0; i < code.n; ++i) g.vertices.push_back({VKind::CodeQubit, i, t});
    if (t % 2 == 1)
      for (int c = 0; c < code.mz; ++c) g.vertices.push_back({VKind::ZCheck, c, t});
    else
      for (int c = 0; c < code.mx; ++c) g.vertices.push_back({VKind::XCheck, c, t});
  }
  g.adj.resize(g.vertices.size());

  auto add_edge = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    g.edges.emplace_back(u, v);
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  };

  // Vertical links between copies of the same code qubit.
  for (int t = 1; t < layers; ++t)
    for (int i = 0; i < code.n; ++i)
      add_edge(g.ordinal(VKind::CodeQubit, i, t), g.ordinal(VKind::CodeQubit, i, t + 1));
  // Tanner copies.
  for (int t = 1; t <= layers; ++t) {
    const bool odd = (t % 2 == 1);
    const BitMatrix& h = odd ? code.hz : code.hx;
    const VKind ck = odd ? VKind::ZCheck : VKind::XCheck;
    for (std::size_t c = 0; c < h.rows(); ++c)
      for (std::size_t i : h.row(c).ones())
        add_edge(g.ordinal(VKind::CodeQubit, static_cast<int>(i), t),
                 g.ordinal(ck, static_cast<int>(c), t));
  }
  std::sort(g.edges.begin(), g.edges.end());
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  return g;
}

/// Which qubits get measured. Unmeasured qubits are always whole code-qubit
/// layers on odd layers; for the Bell pattern those are layers 1 and 2T+1,
/// for GHZ patterns a chosen set of m odd layers. Each unmeasured layer is
/// one "surface" of the output state.
struct MeasurementPattern {
  std::vector<int> unmeasured_layers;       // sorted, odd
  std::vector<std::uint8_t> is_measured;    // per ordinal
  std::vector<int> meas_index;              // ordinal -> measured coord or -1
  std::vector<int> unmeas_index;            // ordinal -> unmeasured coord or -1
  std::vector<int> measured_ords;           // measured coord -> ordinal
  std::vector<int> unmeasured_ords;         // unmeasured coord -> ordinal

  int measured_count() const { return static_cast<int>(measured_ords.size()); }
  int unmeasured_count() const { return static_cast<int>(unmeasured_ords.size()); }
  int n_surfaces() const { return static_cast<int>(unmeasured_layers.size()); }

  int surface_of_layer(int layer) const {
    for (int j = 0; j < n_surfaces(); ++j)
      if (unmeasured_layers[j] == layer) return j;
    return -1;
  }
};

inline MeasurementPattern layers_pattern(const AtgGraph& g, std::vector<int> odd_layers) {
  std::sort(odd_layers.begin(), odd_layers.end());
  for (int l : odd_layers)
    if (l % 2 == 0 || l < 1 || l > g.num_layers())
      throw InfeasibleError("unmeasured layers must be odd layers of the graph");
  MeasurementPattern p;
  p.unmeasured_layers = odd_layers;
  const int nv = g.num_vertices();
  p.is_measured.assign(nv, 1);
  for (int l : odd_layers)
    for (int i = 0; i < g.code.n; ++i)
      p.is_measured[g.ordinal(VKind::CodeQubit, i, l)] = 0;
  p.meas_index.assign(nv, -1);
  p.unmeas_index.assign(nv, -1);
  for (int v = 0; v < nv; ++v) {
    if (p.is_measured[v]) {
      p.meas_index[v] = static_cast<int>(p.measured_ords.size());
      p.measured_ords.push_back(v);
    } else {
      p.unmeas_index[v] = static_cast<int>(p.unmeasured_ords.size());
      p.unmeasured_ords.push_back(v);
    }
  }
  return p;
}

/// Bell pattern: measure the whole bulk, keep the two boundary layers.
inline MeasurementPattern bell_pattern(const AtgGraph& g) {
  return layers_pattern(g, {1, g.num_layers()});
}

/// Greedy proper edge coloring over the canonical edge order. Uses at most
/// 2*maxdegree - 1 colors, i.e. depth O(ell^2) CZ layers, each a matching.
inline std::vector<std::vector<std::pair<int, int>>> prep_schedule(const AtgGraph& g) {
  const int max_colors = 2 * g.max_degree();
  std::vector<std::vector<std::uint64_t>> used(
      g.num_vertices(), std::vector<std::uint64_t>((max_colors + 63) / 64, 0));
  std::vector<std::vector<std::pair<int, int>>> layers;
  auto test = [&](int v, int c) { return (used[v][c >> 6] >> (c & 63)) & 1u; };
  auto mark = [&](int v, int c) { used[v][c >> 6] |= std::uint64_t(1) << (c & 63); };
  for (const auto& [u, v] : g.edges) {
    int c = 0;
    while (test(u, c) || test(v, c)) ++c;
    mark(u, c);
    mark(v, c);
    if (static_cast<int>(layers.size()) <= c) layers.resize(c + 1);
    layers[c].emplace_back(u, v);
  }
  return layers;
}

}  // namespace atg
