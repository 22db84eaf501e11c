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

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "atg/atg_graph.hpp"
#include "atg/decoder.hpp"
#include "atg/errors.hpp"
#include "atg/rng.hpp"
#include "atg/stabilizers.hpp"

namespace atg {

/// Stabilizer tableau in the CHP style (destabilizer rows 0..n-1, stabilizer
/// rows n..2n-1), capped at 64 qubits so a row half is one machine word.
/// Rows are sign * X(x)Z(z); the circuits used here (H, CZ, Pauli gates,
/// X-basis measurement) keep every phase real, so a single sign bit per row
/// suffices.
class Tableau {
 public:
  static constexpr int kMaxQubits = 64;

  explicit Tableau(int n) : n_(n), x_(2 * n, 0), z_(2 * n, 0), sign_(2 * n, 0) {
    if (n < 1 || n > kMaxQubits)
      throw ValidationError("Tableau supports 1..64 qubits, got " + std::to_string(n));
    // |+>^n : destabilizers Z_i, stabilizers X_i.
    for (int i = 0; i < n; ++i) {
      z_[i] = bit(i);
      x_[n + i] = bit(i);
    }
  }

  int num_qubits() const { return n_; }

  void h(int q) {
    const std::uint64_t m = bit(q);
    for (int r = 0; r < 2 * n_; ++r) {
      const bool xb = x_[r] & m, zb = z_[r] & m;
      if (xb && zb) sign_[r] ^= 1;
      if (xb != zb) {
        x_[r] ^= m;
        z_[r] ^= m;
      }
    }
  }

  void cz(int a, int b) {
    const std::uint64_t ma = bit(a), mb = bit(b);
    for (int r = 0; r < 2 * n_; ++r) {
      const bool xa = x_[r] & ma, xb = x_[r] & mb;
      if (xa && xb) sign_[r] ^= 1;
      if (xa) z_[r] ^= mb;
      if (xb) z_[r] ^= ma;
    }
  }

  // Pauli gates only flip row signs.
  void x(int q) {
    const std::uint64_t m = bit(q);
    for (int r = 0; r < 2 * n_; ++r)
      if (z_[r] & m) sign_[r] ^= 1;
  }

  void z(int q) {
    const std::uint64_t m = bit(q);
    for (int r = 0; r < 2 * n_; ++r)
      if (x_[r] & m) sign_[r] ^= 1;
  }

  /// Measures X_q; random outcomes consume one rng draw. X_q anticommutes
  /// with a row iff the row has Z at q.
  int measure_x(int q, Rng& rng) {
    const std::uint64_t m = bit(q);
    int p = -1;
    for (int r = n_; r < 2 * n_; ++r)
      if (z_[r] & m) {
        p = r;
        break;
      }
    if (p >= 0) {
      const int outcome = static_cast<int>(rng.next_u64() & 1);
      for (int r = 0; r < 2 * n_; ++r)
        if (r != p && (z_[r] & m)) row_mult(r, p);
      x_[p - n_] = x_[p];
      z_[p - n_] = z_[p];
      sign_[p - n_] = sign_[p];
      x_[p] = m;
      z_[p] = 0;
      sign_[p] = static_cast<std::uint8_t>(outcome);
      return outcome;
    }
    // Deterministic outcome: reconstruct +-X_q over the stabilizer basis via
    // destabilizer anticommutation.
    std::uint64_t ax = 0, az = 0;
    std::uint8_t s = 0;
    for (int i = 0; i < n_; ++i)
      if (z_[i] & m) acc_mult(ax, az, s, x_[n_ + i], z_[n_ + i], sign_[n_ + i]);
    internal_assert(ax == m && az == 0, "measure_x: reconstruction mismatch");
    return s;
  }

  /// Expectation of X(px)Z(pz): +1 / -1, or 0 if it anticommutes with some
  /// stabilizer.
  int expectation(std::uint64_t px, std::uint64_t pz) const {
    for (int r = n_; r < 2 * n_; ++r)
      if (anticommutes(px, pz, x_[r], z_[r])) return 0;
    std::uint64_t ax = 0, az = 0;
    std::uint8_t s = 0;
    for (int i = 0; i < n_; ++i)
      if (anticommutes(px, pz, x_[i], z_[i]))
        acc_mult(ax, az, s, x_[n_ + i], z_[n_ + i], sign_[n_ + i]);
    internal_assert(ax == px && az == pz, "expectation: operator not in the group");
    return s ? -1 : +1;
  }

  /// Number of independent stabilizer-group elements supported entirely
  /// inside the qubit mask. Used to check that the post-measurement boundary
  /// state is fully determined.
  int stabilizers_within(std::uint64_t mask) const {
    const std::uint64_t outside = ~mask;
    int rank_outside = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> basis;
    for (int r = n_; r < 2 * n_; ++r) {
      std::uint64_t ox = x_[r] & outside, oz = z_[r] & outside;
      for (const auto& [bx, bz] : basis) {
        if (pivot_hit(ox, oz, bx, bz)) {
          ox ^= bx;
          oz ^= bz;
        }
      }
      if (ox | oz) {
        basis.emplace_back(ox, oz);
        ++rank_outside;
      }
    }
    return n_ - rank_outside;
  }

 private:
  static std::uint64_t bit(int q) { return std::uint64_t(1) << q; }

  static bool anticommutes(std::uint64_t x1, std::uint64_t z1, std::uint64_t x2,
                           std::uint64_t z2) {
    return (std::popcount(x1 & z2) + std::popcount(z1 & x2)) & 1;
  }

  // Does (ox, oz) have a 1 at the pivot position of basis vector (bx, bz)?
  // The pivot is the lowest set bit of bx, or of bz when bx is zero.
  static bool pivot_hit(std::uint64_t ox, std::uint64_t oz, std::uint64_t bx,
                        std::uint64_t bz) {
    if (bx) return ox & (bx & ~(bx - 1));
    return oz & (bz & ~(bz - 1));
  }

  // acc := acc * row, with the sign rule X(x1)Z(z1)*X(x2)Z(z2)
  //   = (-1)^{z1.x2} X(x1+x2)Z(z1+z2).
  static void acc_mult(std::uint64_t& ax, std::uint64_t& az, std::uint8_t& s,
                       std::uint64_t rx, std::uint64_t rz, std::uint8_t rs) {
    s ^= rs ^ static_cast<std::uint8_t>(std::popcount(az & rx) & 1);
    ax ^= rx;
    az ^= rz;
  }

  void row_mult(int dst, int src) {
    std::uint8_t s = sign_[dst];
    std::uint64_t ax = x_[dst], az = z_[dst];
    acc_mult(ax, az, s, x_[src], z_[src], sign_[src]);
    x_[dst] = ax;
    z_[dst] = az;
    sign_[dst] = s;
  }

  int n_;
  std::vector<std::uint64_t> x_, z_;
  std::vector<std::uint8_t> sign_;
};

/// Prepares |ATG>: all-|+> then CZ per edge in schedule order, then checks
/// every graph-state generator G_u stabilizes the result.
inline Tableau prepare_atg_state(const AtgGraph& g) {
  if (g.num_vertices() > Tableau::kMaxQubits)
    throw ValidationError("oracle cap: graph has " + std::to_string(g.num_vertices()) +
                          " qubits, tableau handles at most 64");
  Tableau tab(g.num_vertices());
  for (const auto& layer : prep_schedule(g))
    for (const auto& [u, v] : layer) tab.cz(u, v);
  for (int u = 0; u < g.num_vertices(); ++u) {
    std::uint64_t pz = 0;
    for (int v : g.adj[u]) pz |= std::uint64_t(1) << v;
    internal_assert(tab.expectation(std::uint64_t(1) << u, pz) == +1,
                    "prepared state not stabilized by G_u");
  }
  return tab;
}

inline std::uint64_t unmeas_mask_bits(const MeasurementPattern& pat, const BitVector& v) {
  std::uint64_t m = 0;
  for (std::size_t c : v.ones()) m |= std::uint64_t(1) << pat.unmeasured_ords[c];
  return m;
}

struct OracleTrial {
  std::vector<std::uint8_t> outcomes;        // per measured coord
  std::vector<std::uint8_t> meta_syndromes;  // s.alpha per S0 element
  std::vector<int> boundary_signs;           // per S1 element after Rec, +-1
};

/// Applies Z(eta), measures the bulk in the X basis, runs the recovery on
/// the actual outcomes, applies Rec, and reads the S1 boundary signs.
inline OracleTrial measure_and_recover(const AtgGraph& g, const StabilizerSet& set,
                                       const CosetDecoder& bulk, const BitVector& eta,
                                       const DecoderConfig& cfg, Rng& rng,
                                       bool reverse_rec_pivots = false,
                                       Tableau* keep_state = nullptr) {
  const MeasurementPattern& pat = set.pattern;
  Tableau tab = prepare_atg_state(g);
  for (std::size_t c : eta.ones()) tab.z(pat.measured_ords[c]);

  OracleTrial out;
  out.outcomes.resize(pat.measured_count());
  BitVector s(pat.measured_count());
  for (int c = 0; c < pat.measured_count(); ++c) {
    out.outcomes[c] = static_cast<std::uint8_t>(tab.measure_x(pat.measured_ords[c], rng));
    if (out.outcomes[c]) s.set(c);
  }

  out.meta_syndromes.resize(set.s0.size());
  for (std::size_t i = 0; i < set.s0.size(); ++i)
    out.meta_syndromes[i] = BitVector::dot(set.s0[i].bulk_x, s);

  const DecodeResult dr = min_weight_bulk_decode(bulk, out.meta_syndromes, cfg);
  const auto corrected = corrected_syndromes(set, s, dr.beta);
  const BoundaryPauli frame = rec(set, corrected, reverse_rec_pivots);
  for (std::size_t c : frame.x.ones()) tab.x(pat.unmeasured_ords[c]);
  for (std::size_t c : frame.z.ones()) tab.z(pat.unmeasured_ords[c]);

  for (const auto& e : set.s1) {
    const int v = tab.expectation(unmeas_mask_bits(pat, e.boundary_x),
                                  unmeas_mask_bits(pat, e.boundary_z));
    internal_assert(v != 0, "boundary operator not deterministic after measurement");
    out.boundary_signs.push_back(v);
  }
  if (keep_state) *keep_state = tab;
  return out;
}

struct OracleReport {
  int trials = 0;
  int mismatches = 0;
  std::vector<std::uint64_t> bad_trials;  // reproduction: trial indices
};

/// Frame-vs-tableau cross check. Per trial: the measured meta syndromes must
/// equal eta.alpha, the post-Rec boundary signs must equal the frame
/// residual syndromes, and after additionally applying the frame-computed
/// repair the surface checks must all read +1 with the logical operators
/// reading exactly the frame's logical flags. Also checks the boundary
/// state is fully determined.
inline OracleReport oracle_cross_check(const AtgGraph& g, const StabilizerSet& set,
                                       const LogicalBasis& lb, const NoiseConfig& noise,
                                       const DecoderConfig& cfg, int trials,
                                       std::uint64_t stream = 0) {
  OracleReport report;
  report.trials = trials;
  const CosetDecoder bulk = make_bulk_decoder(set);
  const RepDecoders repd = make_rep_decoders(g.code);
  const MeasurementPattern& pat = set.pattern;
  std::uint64_t boundary_mask = 0;
  for (int v : pat.unmeasured_ords) boundary_mask |= std::uint64_t(1) << v;

  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(noise.seed, stream, static_cast<std::uint64_t>(t)));
    const ErrorPattern eta = sample_error(g, pat, noise, rng);

    // Frame side.
    const auto meta = extract_meta_syndromes(set, eta.bits);
    const DecodeResult dr = min_weight_bulk_decode(bulk, meta, cfg);
    const auto resid = residual_syndromes(set, eta.bits, dr.beta);
    const RepResult rr = rep(g.code, set, repd, lb, resid, cfg);

    // Tableau side, continuing the same rng stream.
    Tableau tab(1);
    const OracleTrial oracle =
        measure_and_recover(g, set, bulk, eta.bits, cfg, rng, false, &tab);

    bool ok = true;
    for (std::size_t i = 0; i < set.s0.size() && ok; ++i)
      if (oracle.meta_syndromes[i] != meta[i]) ok = false;
    for (std::size_t e = 0; e < set.s1.size() && ok; ++e)
      if ((oracle.boundary_signs[e] == -1) != (resid[e] != 0)) ok = false;

    if (ok) {
      // Apply the frame-predicted repair: rep_x is Z-type, rep_z X-type.
      for (int j = 0; j < set.n_surfaces(); ++j) {
        const int layer = pat.unmeasured_layers[j];
        for (std::size_t i : rr.rep_x[j].ones())
          tab.z(g.ordinal(VKind::CodeQubit, static_cast<int>(i), layer));
        for (std::size_t i : rr.rep_z[j].ones())
          tab.x(g.ordinal(VKind::CodeQubit, static_cast<int>(i), layer));
      }
      for (std::size_t e = 0; e < set.s1.size() && ok; ++e) {
        const auto& el = set.s1[e];
        const int v = tab.expectation(unmeas_mask_bits(pat, el.boundary_x),
                                      unmeas_mask_bits(pat, el.boundary_z));
        int expected = +1;
        if (el.kind == ElemKind::LogicalXX && rr.logical_x_flags[el.index]) expected = -1;
        if (el.kind == ElemKind::LogicalZZ && rr.logical_zz_flags[el.surface][el.index])
          expected = -1;
        if (v != expected) ok = false;
      }
      if (ok && tab.stabilizers_within(boundary_mask) != pat.unmeasured_count())
        ok = false;
    }
    if (!ok) {
      ++report.mismatches;
      report.bad_trials.push_back(static_cast<std::uint64_t>(t));
    }
  }
  return report;
}

}  // namespace atg
