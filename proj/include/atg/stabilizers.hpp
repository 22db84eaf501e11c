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

#include <string>
#include <vector>

#include "atg/atg_graph.hpp"
#include "atg/css_code.hpp"
#include "atg/errors.hpp"
#include "atg/gf2.hpp"

namespace atg {

/// The graph-state stabilizer G_u = X_u (x) Z_{N(u)}.
struct GraphStabilizer {
  int center;             // vertex ordinal
  BitVector x_support;    // exactly {center}
  BitVector z_support;    // exactly the neighborhood of center
};

inline GraphStabilizer graph_stabilizer(const AtgGraph& g, int ordinal) {
  if (ordinal < 0 || ordinal >= g.num_vertices())
    throw ValidationError("graph_stabilizer: unknown vertex");
  GraphStabilizer s{ordinal, BitVector(g.num_vertices()), BitVector(g.num_vertices())};
  s.x_support.set(ordinal);
  for (int v : g.adj[ordinal]) s.z_support.set(v);
  return s;
}

inline GraphStabilizer graph_stabilizer(const AtgGraph& g, const VertexId& u) {
  return graph_stabilizer(g, g.ordinal(u));
}

enum class ElemKind : std::uint8_t {
  MetaCheckZ,
  MetaCheckX,
  BoundaryZCheck,
  BoundaryXCheck,
  LogicalXX,
  LogicalZZ,
};

inline const char* to_string(ElemKind k) {
  switch (k) {
    case ElemKind::MetaCheckZ: return "meta_z";
    case ElemKind::MetaCheckX: return "meta_x";
    case ElemKind::BoundaryZCheck: return "boundary_z_check";
    case ElemKind::BoundaryXCheck: return "boundary_x_check";
    case ElemKind::LogicalXX: return "logical_xx";
    case ElemKind::LogicalZZ: return "logical_zz";
  }
  return "?";
}

/// An element of S0 or S1: a product of graph-state stabilizers together
/// with the claimed factored form; verify_factorization recomputes the
/// product and checks the claim.
struct StabilizerElement {
  ElemKind kind = ElemKind::MetaCheckZ;
  int index = 0;      // check c, or logical qubit q
  int layer = 0;      // defining layer (meta center / surface layer / lower ZZ layer)
  int surface = -1;   // surface id for surface checks; lower surface for LogicalZZ
  std::vector<int> generators;          // vertex ordinals, multiplication order
  BitVector x_support, z_support;       // claimed supports over all vertices

  StabilizerElement() = default;
  StabilizerElement(ElemKind k, int idx, int l, int surf = -1)
      : kind(k), index(idx), layer(l), surface(surf) {}

  std::string describe() const {
    return std::string(to_string(kind)) + "[index=" + std::to_string(index) +
           ",layer=" + std::to_string(layer) + "]";
  }
};

struct FactorizationResult {
  bool ok;
  int sign;                  // +1 or -1
  std::vector<int> stray;    // vertices where product and claim disagree
};

/// Multiplies the generators symbolically in the symplectic representation,
/// tracking the +-1 phase via X(x1)Z(z1) * X(x2)Z(z2) = (-1)^{z1.x2} X Z,
/// and compares against the claimed supports. Each G_u enters as X_u Z_N(u)
/// with +1 phase, so the accumulated phase picks up Z_acc[u] per factor.
inline FactorizationResult verify_factorization(const AtgGraph& g,
                                                const StabilizerElement& e) {
  const int nv = g.num_vertices();
  BitVector x(nv), z(nv);
  bool sign = false;
  for (int u : e.generators) {
    sign ^= z.get(u);
    x.flip(u);
    for (int v : g.adj[u]) z.flip(v);
  }
  FactorizationResult r;
  r.sign = sign ? -1 : +1;
  BitVector dx = x ^ e.x_support;
  BitVector dz = z ^ e.z_support;
  for (std::size_t v : dx.ones()) r.stray.push_back(static_cast<int>(v));
  for (std::size_t v : dz.ones()) r.stray.push_back(static_cast<int>(v));
  r.ok = r.stray.empty() && !sign;
  return r;
}

namespace detail {

inline void check_element(const AtgGraph& g, const StabilizerElement& e) {
  const FactorizationResult r = verify_factorization(g, e);
  if (!r.ok)
    throw InternalError("stabilizer factorization failed for " + e.describe() + " (" +
                        std::to_string(r.stray.size()) + " stray vertices, sign " +
                        std::to_string(r.sign) + ")");
}

}  // namespace detail

/// S0 for the Bell pattern: one Z meta-check per even layer and Z check,
/// one X meta-check per interior odd layer t in {3,...,2T-1} and X check.
/// Boundary odd layers have no X meta-check: they lack one of the two
/// adjacent X-check layers.
inline std::vector<StabilizerElement> meta_checks(const AtgGraph& g) {
  std::vector<StabilizerElement> out;
  const CssCode& code = g.code;
  const int nv = g.num_vertices();
  for (int t = 2; t <= 2 * g.T; t += 2) {
    for (int c = 0; c < code.mz; ++c) {
      StabilizerElement e{ElemKind::MetaCheckZ, c, t};
      e.x_support = BitVector(nv);
      e.z_support = BitVector(nv);
      e.generators.push_back(g.ordinal(VKind::ZCheck, c, t - 1));
      e.generators.push_back(g.ordinal(VKind::ZCheck, c, t + 1));
      for (std::size_t i : code.hz.row(c).ones())
        e.generators.push_back(g.ordinal(VKind::CodeQubit, static_cast<int>(i), t));
      for (int u : e.generators) e.x_support.set(u);
      detail::check_element(g, e);
      out.push_back(std::move(e));
    }
  }
  for (int t = 3; t <= 2 * g.T - 1; t += 2) {
    for (int c = 0; c < code.mx; ++c) {
      StabilizerElement e{ElemKind::MetaCheckX, c, t};
      e.x_support = BitVector(nv);
      e.z_support = BitVector(nv);
      e.generators.push_back(g.ordinal(VKind::XCheck, c, t - 1));
      e.generators.push_back(g.ordinal(VKind::XCheck, c, t + 1));
      for (std::size_t i : code.hx.row(c).ones())
        e.generators.push_back(g.ordinal(VKind::CodeQubit, static_cast<int>(i), t));
      for (int u : e.generators) e.x_support.set(u);
      detail::check_element(g, e);
      out.push_back(std::move(e));
    }
  }
  return out;
}

/// Stabilizers of the two boundary codes. Z checks are single graph-state
/// stabilizers G_(c,1), G_(c,2T+1); X checks need the product
/// G_(c,2) * prod_{i~c} G_(i,1) and its mirror.
inline std::vector<StabilizerElement> boundary_code_stabilizers(const AtgGraph& g) {
  std::vector<StabilizerElement> out;
  const CssCode& code = g.code;
  const int nv = g.num_vertices();
  const int top = g.num_layers();
  int surface = 0;
  for (int layer : {1, top}) {
    for (int c = 0; c < code.mz; ++c) {
      StabilizerElement e{ElemKind::BoundaryZCheck, c, layer, surface};
      e.x_support = BitVector(nv);
      e.z_support = BitVector(nv);
      e.generators.push_back(g.ordinal(VKind::ZCheck, c, layer));
      e.x_support.set(e.generators[0]);
      for (std::size_t i : code.hz.row(c).ones())
        e.z_support.set(g.ordinal(VKind::CodeQubit, static_cast<int>(i), layer));
      detail::check_element(g, e);
      out.push_back(std::move(e));
    }
    ++surface;
  }
  surface = 0;
  for (int layer : {1, top}) {
    const int check_layer = (layer == 1) ? 2 : top - 1;
    for (int c = 0; c < code.mx; ++c) {
      StabilizerElement e{ElemKind::BoundaryXCheck, c, layer, surface};
      e.x_support = BitVector(nv);
      e.z_support = BitVector(nv);
      e.generators.push_back(g.ordinal(VKind::XCheck, c, check_layer));
      for (std::size_t i : code.hx.row(c).ones())
        e.generators.push_back(g.ordinal(VKind::CodeQubit, static_cast<int>(i), layer));
      for (int u : e.generators) e.x_support.set(u);
      detail::check_element(g, e);
      out.push_back(std::move(e));
    }
    ++surface;
  }
  return out;
}

/// Encoded Bell-state stabilizers: XbarXbar from code-qubit stabilizers on
/// odd layers, ZbarZbar on even layers. Any logical representative works;
/// supports come from the given basis.
inline std::vector<StabilizerElement> encoded_logical_stabilizers(const AtgGraph& g,
                                                                  const LogicalBasis& lb) {
  std::vector<StabilizerElement> out;
  const int nv = g.num_vertices();
  const int top = g.num_layers();
  for (int q = 0; q < static_cast<int>(lb.x.size()); ++q) {
    StabilizerElement e{ElemKind::LogicalXX, q, 0};
    e.x_support = BitVector(nv);
    e.z_support = BitVector(nv);
    for (int t = 1; t <= top; t += 2)
      for (std::size_t i : lb.x[q].ones())
        e.generators.push_back(g.ordinal(VKind::CodeQubit, static_cast<int>(i), t));
    for (int u : e.generators) e.x_support.set(u);
    detail::check_element(g, e);
    out.push_back(std::move(e));
  }
  for (int q = 0; q < static_cast<int>(lb.z.size()); ++q) {
    StabilizerElement e{ElemKind::LogicalZZ, q, 1, 0};
    e.x_support = BitVector(nv);
    e.z_support = BitVector(nv);
    for (int t = 2; t < top; t += 2)
      for (std::size_t i : lb.z[q].ones())
        e.generators.push_back(g.ordinal(VKind::CodeQubit, static_cast<int>(i), t));
    for (int u : e.generators) e.x_support.set(u);
    for (std::size_t i : lb.z[q].ones()) {
      e.z_support.set(g.ordinal(VKind::CodeQubit, static_cast<int>(i), 1));
      e.z_support.set(g.ordinal(VKind::CodeQubit, static_cast<int>(i), top));
    }
    detail::check_element(g, e);
    out.push_back(std::move(e));
  }
  return out;
}

/// A stabilizer element restricted to a measurement pattern: the pure-X part
/// on measured qubits, and the boundary Pauli on unmeasured qubits.
struct CompiledElem {
  ElemKind kind;
  int index;
  int layer;
  int surface = -1;
  BitVector bulk_x;                  // over measured coords
  BitVector boundary_x, boundary_z;  // over unmeasured coords
};

/// A full compiled S0/S1 pair for one (graph, pattern), with index groups
/// the decoder consumes. s1 holds the generators of S1 beyond S0.
struct StabilizerSet {
  MeasurementPattern pattern;
  std::vector<StabilizerElement> s0_raw, s1_raw;
  std::vector<CompiledElem> s0, s1;
  // s1 index groups:
  std::vector<std::vector<int>> surf_x_idx;   // [surface][c]
  std::vector<std::vector<int>> surf_z_idx;   // [surface][c]
  std::vector<int> logical_x_idx;             // [q], the global X element
  std::vector<std::vector<int>> logical_zz_idx;  // [pair][q]

  int n_surfaces() const { return pattern.n_surfaces(); }
};

namespace detail {

inline CompiledElem compile_elem(const AtgGraph& g, const MeasurementPattern& p,
                                 const StabilizerElement& e, bool is_meta) {
  CompiledElem c;
  c.kind = e.kind;
  c.index = e.index;
  c.layer = e.layer;
  c.surface = e.surface;
  c.bulk_x = BitVector(p.measured_count());
  c.boundary_x = BitVector(p.unmeasured_count());
  c.boundary_z = BitVector(p.unmeasured_count());
  for (std::size_t v : e.x_support.ones()) {
    if (p.is_measured[v])
      c.bulk_x.set(p.meas_index[v]);
    else
      c.boundary_x.set(p.unmeas_index[v]);
  }
  for (std::size_t v : e.z_support.ones()) {
    internal_assert(!p.is_measured[v],
                    "element " + e.describe() + " has Z support on a measured qubit");
    c.boundary_z.set(p.unmeas_index[v]);
  }
  if (is_meta)
    internal_assert(c.boundary_x.none() && c.boundary_z.none(),
                    "meta-check " + e.describe() + " has boundary support");
  (void)g;
  return c;
}

inline void index_s1_groups(StabilizerSet& set, const CssCode& code, int k) {
  const int m = set.pattern.n_surfaces();
  set.surf_x_idx.assign(m, {});
  set.surf_z_idx.assign(m, {});
  set.logical_x_idx.assign(k, -1);
  set.logical_zz_idx.assign(std::max(0, m - 1), std::vector<int>(k, -1));
  for (int i = 0; i < static_cast<int>(set.s1.size()); ++i) {
    const CompiledElem& e = set.s1[i];
    switch (e.kind) {
      case ElemKind::BoundaryXCheck: set.surf_x_idx[e.surface].push_back(i); break;
      case ElemKind::BoundaryZCheck: set.surf_z_idx[e.surface].push_back(i); break;
      case ElemKind::LogicalXX: set.logical_x_idx[e.index] = i; break;
      case ElemKind::LogicalZZ: set.logical_zz_idx[e.surface][e.index] = i; break;
      default: throw InternalError("meta-check found in S1 list");
    }
  }
  for (int j = 0; j < m; ++j)
    internal_assert(static_cast<int>(set.surf_x_idx[j].size()) == code.mx &&
                        static_cast<int>(set.surf_z_idx[j].size()) == code.mz,
                    "per-surface check count mismatch");
}

}  // namespace detail

/// Builds the full compiled Bell-state stabilizer structure.
inline StabilizerSet make_bell_set(const AtgGraph& g, const LogicalBasis& lb) {
  StabilizerSet set;
  set.pattern = bell_pattern(g);
  set.s0_raw = meta_checks(g);
  set.s1_raw = boundary_code_stabilizers(g);
  auto logicals = encoded_logical_stabilizers(g, lb);
  set.s1_raw.insert(set.s1_raw.end(), logicals.begin(), logicals.end());
  for (const auto& e : set.s0_raw)
    set.s0.push_back(detail::compile_elem(g, set.pattern, e, true));
  for (const auto& e : set.s1_raw)
    set.s1.push_back(detail::compile_elem(g, set.pattern, e, false));
  detail::index_s1_groups(set, g.code, g.code.k);
  return set;
}

}  // namespace atg
