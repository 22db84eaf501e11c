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
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "atg/atg_graph.hpp"
#include "atg/errors.hpp"
#include "atg/gf2.hpp"

namespace atg {

// The syndrome adjacency graphs are chains of n-node code groups with check
// groups between them; two nodes are adjacent iff some meta-check or surface
// check relation acts on both. Correspondence to the ATG:
//
//   X side: code group q in [0,T]    <-> code qubits on odd layer 2q+1
//           check group r in [0,T-1] <-> X checks on even layer 2r+2
//   Z side: code group q in [1,T]    <-> code qubits on even layer 2q
//           check group r in [0,T]   <-> Z checks on odd layer 2r+1
//
// Unmeasured layers contribute "boundary" code groups marked by the residual
// error instead of a decoding mismatch; on the Z side those are extra groups
// hanging off the Z-check group of their layer (for the Bell pattern this is
// exactly the two-ended chain, for GHZ one group per unmeasured layer).
// The two sides are mirror images; the Z chain is one rung taller.

enum class SagNodeType : std::uint8_t { Interior, Check, Boundary };

struct SagNode {
  SagNodeType type;
  int index;        // qubit i or check c within its group
  int group;        // code group q or check group r (boundary: surface id)
  int mcoord = -1;  // measured coordinate in the ATG (interior/check only)
  int surface = -1; // boundary nodes only
};

struct SyndromeAdjGraph {
  char side = 'X';
  std::vector<SagNode> nodes;
  std::vector<std::vector<int>> adj;
  std::vector<std::vector<int>> boundary_groups;  // per surface: node ids
  int z_degree = 0;                               // actual max degree

  int num_nodes() const { return static_cast<int>(nodes.size()); }
};

namespace detail {

// Pairs (i,j), i<j, of qubits sharing a check row.
inline std::vector<std::pair<int, int>> tanner_pairs(const BitMatrix& h) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    const auto sup = h.row(r).ones();
    for (std::size_t a = 0; a < sup.size(); ++a)
      for (std::size_t b = a + 1; b < sup.size(); ++b)
        pairs.emplace_back(static_cast<int>(sup[a]), static_cast<int>(sup[b]));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace detail

inline SyndromeAdjGraph build_sag(const AtgGraph& g, const MeasurementPattern& pat,
                                  char side) {
  if (side != 'X' && side != 'Z') throw ValidationError("SAG side must be 'X' or 'Z'");
  const CssCode& code = g.code;
  const int T = g.T;
  SyndromeAdjGraph sag;
  sag.side = side;
  std::vector<int> code_base, check_base;

  auto add_edge = [&](int u, int v) {
    sag.adj[u].push_back(v);
    sag.adj[v].push_back(u);
  };

  if (side == 'X') {
    // Code groups q=0..T at odd layers, X-check groups r=0..T-1 at even.
    for (int q = 0; q <= T; ++q) {
      code_base.push_back(sag.num_nodes());
      const int layer = 2 * q + 1;
      const int surface = pat.surface_of_layer(layer);
      for (int i = 0; i < code.n; ++i) {
        SagNode nd{surface >= 0 ? SagNodeType::Boundary : SagNodeType::Interior, i, q};
        if (surface >= 0)
          nd.surface = surface;
        else
          nd.mcoord = pat.meas_index[g.ordinal(VKind::CodeQubit, i, layer)];
        sag.nodes.push_back(nd);
      }
    }
    for (int r = 0; r < T; ++r) {
      check_base.push_back(sag.num_nodes());
      for (int c = 0; c < code.mx; ++c) {
        SagNode nd{SagNodeType::Check, c, r};
        nd.mcoord = pat.meas_index[g.ordinal(VKind::XCheck, c, 2 * r + 2)];
        sag.nodes.push_back(nd);
      }
    }
    sag.adj.resize(sag.num_nodes());
    const auto pairs = detail::tanner_pairs(code.hx);
    for (int q = 0; q <= T; ++q)
      for (const auto& [i, j] : pairs) add_edge(code_base[q] + i, code_base[q] + j);
    for (int r = 0; r < T; ++r)
      for (int c = 0; c < code.mx; ++c) {
        if (r + 1 < T) add_edge(check_base[r] + c, check_base[r + 1] + c);
        for (std::size_t i : code.hx.row(c).ones()) {
          add_edge(check_base[r] + c, code_base[r] + static_cast<int>(i));
          add_edge(check_base[r] + c, code_base[r + 1] + static_cast<int>(i));
        }
      }
  } else {
    // Z-check groups r=0..T at odd layers, interior code groups q=1..T at
    // even layers, plus one boundary group per unmeasured layer.
    for (int r = 0; r <= T; ++r) {
      check_base.push_back(sag.num_nodes());
      for (int c = 0; c < code.mz; ++c) {
        SagNode nd{SagNodeType::Check, c, r};
        nd.mcoord = pat.meas_index[g.ordinal(VKind::ZCheck, c, 2 * r + 1)];
        sag.nodes.push_back(nd);
      }
    }
    code_base.push_back(-1);  // no interior code group 0
    for (int q = 1; q <= T; ++q) {
      code_base.push_back(sag.num_nodes());
      for (int i = 0; i < code.n; ++i) {
        SagNode nd{SagNodeType::Interior, i, q};
        nd.mcoord = pat.meas_index[g.ordinal(VKind::CodeQubit, i, 2 * q)];
        sag.nodes.push_back(nd);
      }
    }
    std::vector<int> boundary_base;
    for (int j = 0; j < pat.n_surfaces(); ++j) {
      boundary_base.push_back(sag.num_nodes());
      for (int i = 0; i < code.n; ++i) {
        SagNode nd{SagNodeType::Boundary, i, j};
        nd.surface = j;
        sag.nodes.push_back(nd);
      }
    }
    sag.adj.resize(sag.num_nodes());
    const auto pairs = detail::tanner_pairs(code.hz);
    for (int q = 1; q <= T; ++q)
      for (const auto& [i, j] : pairs) add_edge(code_base[q] + i, code_base[q] + j);
    for (int j = 0; j < pat.n_surfaces(); ++j)
      for (const auto& [a, b] : pairs) add_edge(boundary_base[j] + a, boundary_base[j] + b);
    for (int r = 0; r <= T; ++r)
      for (int c = 0; c < code.mz; ++c) {
        if (r + 1 <= T) add_edge(check_base[r] + c, check_base[r + 1] + c);
        for (std::size_t i : code.hz.row(c).ones()) {
          // The Z meta-check on even layer 2q couples Z checks at layers
          // 2q-1 and 2q+1 (groups q-1 and q) to code group q.
          if (r >= 1) add_edge(check_base[r] + c, code_base[r] + static_cast<int>(i));
          if (r + 1 <= T) add_edge(check_base[r] + c, code_base[r + 1] + static_cast<int>(i));
        }
      }
    for (int j = 0; j < pat.n_surfaces(); ++j) {
      const int r = (pat.unmeasured_layers[j] - 1) / 2;
      for (int c = 0; c < code.mz; ++c)
        for (std::size_t i : code.hz.row(c).ones())
          add_edge(boundary_base[j] + static_cast<int>(i), check_base[r] + c);
    }
  }

  for (auto& a : sag.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  sag.boundary_groups.assign(pat.n_surfaces(), {});
  for (int v = 0; v < sag.num_nodes(); ++v)
    if (sag.nodes[v].type == SagNodeType::Boundary)
      sag.boundary_groups[sag.nodes[v].surface].push_back(v);
  for (const auto& a : sag.adj)
    sag.z_degree = std::max(sag.z_degree, static_cast<int>(a.size()));
  return sag;
}

/// Marks decoding mismatches: interior/check nodes where the true and
/// inferred error differ, and boundary nodes where the residual error of
/// that side is supported.
inline std::vector<std::uint8_t> mark_mismatch(const SyndromeAdjGraph& sag,
                                               const BitVector& diff,
                                               const std::vector<BitVector>& rep_side) {
  std::vector<std::uint8_t> marked(sag.num_nodes(), 0);
  for (int v = 0; v < sag.num_nodes(); ++v) {
    const SagNode& nd = sag.nodes[v];
    if (nd.type == SagNodeType::Boundary)
      marked[v] = rep_side[nd.surface].get(nd.index);
    else
      marked[v] = diff.get(nd.mcoord);
  }
  return marked;
}

struct ClusterComponent {
  std::vector<int> nodes;
  int size = 0;
  int true_weight = 0;      // weight of the sampled error on the component
  int inferred_weight = 0;  // weight of the decoded error on the component
  std::vector<int> touches; // surfaces whose boundary group the component meets
};

struct ClusterReport {
  std::vector<ClusterComponent> components;
  bool cc_ok = true;  // no component touches two distinct surfaces
  int max_size = 0;
};

/// Maximal connected components of the marked set, via union-find, with
/// per-component weights of the true and inferred errors.
inline ClusterReport components(const SyndromeAdjGraph& sag,
                                const std::vector<std::uint8_t>& marked,
                                const BitVector& eta, const BitVector& beta) {
  const int n = sag.num_nodes();
  std::vector<int> parent(n, -1);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int v = 0; v < n; ++v)
    if (marked[v]) parent[v] = v;
  for (int v = 0; v < n; ++v) {
    if (!marked[v]) continue;
    for (int u : sag.adj[v]) {
      if (!marked[u]) continue;
      int a = find(v), b = find(u);
      if (a != b) parent[a] = b;
    }
  }
  std::vector<int> root_to_comp(n, -1);
  ClusterReport rep;
  for (int v = 0; v < n; ++v) {
    if (!marked[v]) continue;
    const int r = find(v);
    if (root_to_comp[r] < 0) {
      root_to_comp[r] = static_cast<int>(rep.components.size());
      rep.components.emplace_back();
    }
    ClusterComponent& comp = rep.components[root_to_comp[r]];
    comp.nodes.push_back(v);
    ++comp.size;
    const SagNode& nd = sag.nodes[v];
    if (nd.type == SagNodeType::Boundary) {
      if (std::find(comp.touches.begin(), comp.touches.end(), nd.surface) ==
          comp.touches.end())
        comp.touches.push_back(nd.surface);
    } else {
      comp.true_weight += eta.get(nd.mcoord);
      comp.inferred_weight += beta.get(nd.mcoord);
    }
  }
  for (auto& c : rep.components) {
    std::sort(c.touches.begin(), c.touches.end());
    rep.max_size = std::max(rep.max_size, c.size);
    if (c.touches.size() >= 2) rep.cc_ok = false;
  }
  return rep;
}

/// The cluster-weight inequality: on every component, the inferred error is
/// no heavier than the true error. Guaranteed for an exact (globally
/// minimum-weight) decode; may fail for heuristic decodes.
inline bool check_cluster_weight(const ClusterReport& rep) {
  for (const auto& c : rep.components)
    if (c.inferred_weight > c.true_weight) return false;
  return true;
}

/// Exhaustively counts vertex sets S of size `s` that contain `anchor` and
/// in which every connected component of the induced subgraph meets the
/// anchor. This is the quantity the percolation counting bound
/// z^(s-t) * 4^s dominates.
inline std::int64_t count_connected_sets(const std::vector<std::vector<int>>& adj,
                                         const std::vector<int>& anchor, int s) {
  const int n = static_cast<int>(adj.size());
  if (n > 20) throw ValidationError("count_connected_sets: graph too large (cap 20)");
  const int t = static_cast<int>(anchor.size());
  if (s < t) return 0;
  std::uint32_t anchor_mask = 0;
  for (int v : anchor) anchor_mask |= 1u << v;
  std::vector<int> rest;
  for (int v = 0; v < n; ++v)
    if (!((anchor_mask >> v) & 1)) rest.push_back(v);
  const int need = s - t;
  if (need > static_cast<int>(rest.size())) return 0;

  std::int64_t count = 0;
  auto qualifies = [&](std::uint32_t set_mask) {
    // Flood from the anchor inside the set; S qualifies iff all reached.
    std::uint32_t seen = set_mask & anchor_mask;
    std::uint32_t frontier = seen;
    while (frontier) {
      std::uint32_t next = 0;
      std::uint32_t f = frontier;
      while (f) {
        const int v = std::countr_zero(f);
        f &= f - 1;
        for (int u : adj[v]) next |= (set_mask >> u & 1) << u;
      }
      next &= ~seen;
      seen |= next;
      frontier = next;
    }
    return seen == set_mask;
  };

  // Enumerate subsets of `rest` of size `need`.
  std::vector<int> pick(need);
  std::function<void(int, int, std::uint32_t)> go = [&](int start, int depth,
                                                        std::uint32_t mask) {
    if (depth == need) {
      if (qualifies(mask | anchor_mask)) ++count;
      return;
    }
    for (int i = start; i <= static_cast<int>(rest.size()) - (need - depth); ++i)
      go(i + 1, depth + 1, mask | (1u << rest[i]));
  };
  go(0, 0, 0);
  return count;
}

/// The threshold constants of the clustering argument, exact rationals.
struct ThresholdBounds {
  int z = 0;                       // SAG degree bound ell*(ell+1)
  std::uint64_t p0_den = 0;        // p0 = 1/(8z)^2
  std::uint64_t p1_den = 0;        // p1 = p2 = 1/(8z)^4
  double p0 = 0, p1 = 0, p2 = 0, p_star = 0;
};

inline ThresholdBounds threshold_bounds(int ell) {
  if (ell < 1) throw ValidationError("threshold_bounds: ell must be >= 1");
  ThresholdBounds b;
  b.z = ell * (ell + 1);
  const std::uint64_t e = 8ull * static_cast<std::uint64_t>(b.z);
  b.p0_den = e * e;
  b.p1_den = e * e * e * e;
  b.p0 = 1.0 / static_cast<double>(b.p0_den);
  b.p1 = b.p2 = 1.0 / static_cast<double>(b.p1_den);
  b.p_star = std::min(b.p0, b.p1);
  return b;
}

/// Explicit union-bound failure probability with exponents T/2 for the
/// boundary-span terms and d/4 for the logical terms. An upper bound, never
/// a point estimate; vacuous (>1) except far below threshold.
struct FailureBound {
  double cc_x = 0, cc_z = 0;      // boundary-spanning cluster terms
  double log_x = 0, log_z = 0;    // logical correction terms
  double total = 0;
  double residual_rate = 0;       // local stochastic rate (p/p1)^(1/2)
};

inline FailureBound failure_bound(const CssCode& code, int T, double p,
                                  const ThresholdBounds& b) {
  if (!(p >= 0)) throw ValidationError("failure_bound: bad p");
  // Each term has its own convergence radius: the boundary-span series needs
  // p < p0, the logical series p < p2. Terms whose series diverges come back
  // infinite; only p >= p0 (nothing converges) is an error. This lets the
  // span terms be evaluated on their own in the regime p2 <= p < p0.
  if (p >= b.p0)
    throw ValidationError("failure_bound: p >= p0, every union-bound series diverges");
  if (!code.d.has_value())
    throw ValidationError("failure_bound: code distance unknown");
  FailureBound f;
  if (p == 0) return f;
  const double d = static_cast<double>(*code.d);
  auto span_term = [&](int m) {
    const double r = p / b.p0;
    return m * std::pow(r, T / 2.0) / (1.0 - std::sqrt(r));
  };
  f.cc_x = span_term(code.mx);
  f.cc_z = span_term(code.mz);
  const double r2 = p / b.p2;
  const double inf = std::numeric_limits<double>::infinity();
  const double logical_numer =
      r2 < 1.0 ? 2.0 * code.n * T * std::pow(r2, d / 4.0) / (1.0 - std::pow(r2, 0.25))
               : inf;
  const double pcc_x = std::max(1e-12, 1.0 - f.cc_x);
  const double pcc_z = std::max(1e-12, 1.0 - f.cc_z);
  f.log_x = logical_numer / pcc_x;
  f.log_z = logical_numer / pcc_z;
  f.total = f.cc_x + f.cc_z + f.log_x + f.log_z;
  f.residual_rate = std::sqrt(p / b.p1);
  return f;
}

}  // namespace atg
