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

#include <climits>
#include <cstdint>
#include <vector>

#include "atg/cluster.hpp"
#include "atg/errors.hpp"
#include "atg/gf2.hpp"
#include "atg/noise.hpp"
#include "atg/rng.hpp"
#include "atg/stabilizers.hpp"

namespace atg {

enum class DecodeMode : std::uint8_t { Exact, Heuristic };

struct DecoderConfig {
  DecodeMode mode = DecodeMode::Exact;
  int exact_cap = 40;  // max coordinate count the exact search accepts
};

/// Minimum-weight coset decoding over GF(2): given checks (rows) and a
/// syndrome, find x with rows*x = syndrome of minimum weight. Exact mode is
/// a branch-and-bound over the coordinates; ties are broken toward the
/// support that is lexicographically first as an ascending index sequence.
/// Heuristic mode takes the pivot solution and greedily improves it over the
/// nullspace. The structure is reusable: build once, decode many syndromes.
class CosetDecoder {
 public:
  static CosetDecoder build(std::vector<BitVector> rows, int ncols) {
    CosetDecoder d;
    d.ncols_ = ncols;
    d.rows_ = std::move(rows);
    d.cols_.assign(ncols, {});
    for (std::size_t r = 0; r < d.rows_.size(); ++r) {
      internal_assert(static_cast<int>(d.rows_[r].size()) == ncols,
                      "CosetDecoder: row width mismatch");
      d.support_.push_back(d.rows_[r].ones());
      for (std::size_t c : d.support_.back()) d.cols_[c].push_back(static_cast<int>(r));
    }
    d.mat_ = BitMatrix::from_rows(d.rows_.empty()
                                      ? std::vector<BitVector>{BitVector(ncols)}
                                      : d.rows_);
    d.nullbasis_ = nullspace_basis(d.mat_);
    return d;
  }

  int ncols() const { return ncols_; }
  int nrows() const { return static_cast<int>(rows_.size()); }

  BitVector syndrome_of(const BitVector& x) const {
    BitVector s(nrows());
    for (int r = 0; r < nrows(); ++r)
      if (BitVector::dot(rows_[r], x)) s.set(r);
    return s;
  }

  struct Result {
    BitVector x;
    int weight = 0;
    bool optimal = false;
  };

  Result decode(const BitVector& syndrome, DecodeMode mode, int exact_cap) const {
    internal_assert(static_cast<int>(syndrome.size()) == nrows(),
                    "CosetDecoder: syndrome length mismatch");
    if (mode == DecodeMode::Exact) {
      if (ncols_ > exact_cap)
        throw ValidationError("exact decode needs " + std::to_string(ncols_) +
                              " coordinates but the cap is " + std::to_string(exact_cap) +
                              "; raise --exact-cap or use heuristic mode");
      return decode_exact(syndrome);
    }
    return decode_heuristic(syndrome);
  }

 private:
  Result decode_heuristic(const BitVector& syndrome) const {
    auto x = solve(mat_, pad_syndrome(syndrome));
    if (!x) throw InternalError("coset decode: infeasible syndrome");
    // Greedy weight descent over the nullspace, deterministic basis order.
    bool improved = true;
    while (improved) {
      improved = false;
      for (const auto& b : nullbasis_) {
        BitVector cand = *x ^ b;
        if (cand.weight() < x->weight()) {
          *x = std::move(cand);
          improved = true;
        }
      }
    }
    return {*x, static_cast<int>(x->weight()), false};
  }

  BitVector pad_syndrome(const BitVector& syndrome) const {
    if (!rows_.empty()) return syndrome;
    return BitVector(1);  // matches the placeholder zero row
  }

  // Branch and bound. At each node we take the first unsatisfied check and
  // branch over which of its still-available coordinates to flip; earlier
  // siblings' coordinates are forbidden in later ones, so no solution is
  // enumerated twice. The bound adds a greedy count of unsatisfied checks
  // with pairwise disjoint available supports.
  struct Search {
    const CosetDecoder* d;
    BitVector flips, forbidden;
    std::vector<std::uint8_t> unsat;
    int n_unsat = 0;
    int weight = 0;
    int best_weight = INT_MAX;
    BitVector best;
    bool found = false;

    int lower_bound() {
      int lb = 0;
      BitVector used(d->ncols_);
      for (int r = 0; r < d->nrows(); ++r) {
        if (!unsat[r]) continue;
        bool overlap = false, has_avail = false;
        for (std::size_t c : d->support_[r]) {
          if (flips.get(c) || forbidden.get(c)) continue;
          has_avail = true;
          if (used.get(c)) overlap = true;
        }
        if (!has_avail) return INT_MAX;  // dead branch
        if (!overlap) {
          ++lb;
          for (std::size_t c : d->support_[r])
            if (!flips.get(c) && !forbidden.get(c)) used.set(c);
        }
      }
      return lb;
    }

    void toggle(std::size_t c) {
      flips.flip(c);
      for (int r : d->cols_[c]) {
        unsat[r] ^= 1;
        n_unsat += unsat[r] ? 1 : -1;
      }
    }

    void run() {
      if (n_unsat == 0) {
        if (weight < best_weight ||
            (weight == best_weight &&
             (!found || BitVector::support_compare(flips, best) < 0))) {
          best_weight = weight;
          best = flips;
          found = true;
        }
        return;
      }
      const int lb = lower_bound();
      if (lb == INT_MAX || weight + lb > best_weight) return;
      int first = -1;
      for (int r = 0; r < d->nrows(); ++r)
        if (unsat[r]) {
          first = r;
          break;
        }
      std::vector<std::size_t> avail;
      for (std::size_t c : d->support_[first])
        if (!flips.get(c) && !forbidden.get(c)) avail.push_back(c);
      for (std::size_t c : avail) {
        toggle(c);
        ++weight;
        run();
        --weight;
        toggle(c);
        forbidden.set(c);  // later siblings must not use c
      }
      for (std::size_t c : avail) forbidden.set(c, false);
    }
  };

  Result decode_exact(const BitVector& syndrome) const {
    Search s;
    s.d = this;
    s.flips = BitVector(ncols_);
    s.forbidden = BitVector(ncols_);
    s.unsat.assign(nrows(), 0);
    for (int r = 0; r < nrows(); ++r)
      if (syndrome.get(r)) {
        s.unsat[r] = 1;
        ++s.n_unsat;
      }
    s.run();
    if (!s.found) throw InternalError("coset decode: infeasible syndrome");
    return {s.best, s.best_weight, true};
  }

  int ncols_ = 0;
  std::vector<BitVector> rows_;
  std::vector<std::vector<std::size_t>> support_;
  std::vector<std::vector<int>> cols_;
  BitMatrix mat_;
  std::vector<BitVector> nullbasis_;
};

/// Bit per S0 element: the parity of the overlap between the element's bulk
/// support and the measured flip pattern. In frame simulation this equals
/// the measured syndrome s.alpha because noiseless outcomes satisfy
/// s0.alpha = 0 for every pure-X stabilizer on the measured set.
inline std::vector<std::uint8_t> extract_meta_syndromes(const StabilizerSet& set,
                                                        const BitVector& eta) {
  std::vector<std::uint8_t> out(set.s0.size());
  for (std::size_t i = 0; i < set.s0.size(); ++i)
    out[i] = BitVector::dot(set.s0[i].bulk_x, eta);
  return out;
}

struct DecodeResult {
  BitVector beta;  // over measured coords
  int weight = 0;
  bool optimal = false;
};

inline CosetDecoder make_bulk_decoder(const StabilizerSet& set) {
  std::vector<BitVector> rows;
  for (const auto& e : set.s0) rows.push_back(e.bulk_x);
  return CosetDecoder::build(std::move(rows), set.pattern.measured_count());
}

inline DecodeResult min_weight_bulk_decode(const CosetDecoder& bulk,
                                           const std::vector<std::uint8_t>& meta,
                                           const DecoderConfig& cfg) {
  BitVector s(meta.size());
  for (std::size_t i = 0; i < meta.size(); ++i)
    if (meta[i]) s.set(i);
  auto r = bulk.decode(s, cfg.mode, cfg.exact_cap);
  // Decoder consistency is a hard invariant: beta must reproduce the
  // measured meta syndromes exactly.
  internal_assert(bulk.syndrome_of(r.x) == s, "decoded beta violates meta syndromes");
  return {std::move(r.x), r.weight, r.optimal};
}

/// Corrected syndromes s'_gamma = s.gamma xor gamma.beta for the S1 list.
inline std::vector<std::uint8_t> corrected_syndromes(const StabilizerSet& set,
                                                     const BitVector& s_or_eta,
                                                     const BitVector& beta) {
  std::vector<std::uint8_t> out(set.s1.size());
  for (std::size_t i = 0; i < set.s1.size(); ++i)
    out[i] = BitVector::dot(set.s1[i].bulk_x, s_or_eta) ^
             BitVector::dot(set.s1[i].bulk_x, beta);
  return out;
}

/// Residual syndrome per S1 element: gamma.(beta xor eta). Independent of
/// the Rec solution by construction.
inline std::vector<std::uint8_t> residual_syndromes(const StabilizerSet& set,
                                                    const BitVector& eta,
                                                    const BitVector& beta) {
  BitVector diff = eta ^ beta;
  std::vector<std::uint8_t> out(set.s1.size());
  for (std::size_t i = 0; i < set.s1.size(); ++i)
    out[i] = BitVector::dot(set.s1[i].bulk_x, diff);
  return out;
}

/// A Pauli on the unmeasured qubits, split into Z and X supports.
struct BoundaryPauli {
  BitVector z, x;  // over unmeasured coords
};

inline std::uint8_t boundary_syndrome_bit(const CompiledElem& e, const BoundaryPauli& p) {
  return BitVector::dot(e.boundary_x, p.z) ^ BitVector::dot(e.boundary_z, p.x);
}

/// The Pauli frame: any boundary Pauli whose S1 syndromes equal the given
/// corrected syndromes. Deterministic through solve()'s pivot rule. The
/// column order (Z coordinates then X coordinates, optionally reversed) only
/// changes which coset representative is picked, never any residual.
inline BoundaryPauli rec(const StabilizerSet& set,
                         const std::vector<std::uint8_t>& corrected,
                         bool reverse_pivot_order = false) {
  const int u = set.pattern.unmeasured_count();
  BitMatrix sys(set.s1.size(), 2 * u);
  BitVector rhs(set.s1.size());
  for (std::size_t e = 0; e < set.s1.size(); ++e) {
    for (std::size_t c = 0; c < static_cast<std::size_t>(u); ++c) {
      const std::size_t zc = reverse_pivot_order ? 2 * u - 1 - c : c;
      const std::size_t xc = reverse_pivot_order ? u - 1 - c : u + c;
      if (set.s1[e].boundary_x.get(c)) sys.set(e, zc);
      if (set.s1[e].boundary_z.get(c)) sys.set(e, xc);
    }
    if (corrected[e]) rhs.set(e);
  }
  auto sol = solve(sys, rhs);
  if (!sol)
    throw InternalError("rec: infeasible corrected syndrome (full-rank code assumed)");
  BoundaryPauli p{BitVector(u), BitVector(u)};
  for (int c = 0; c < u; ++c) {
    const std::size_t zc = reverse_pivot_order ? 2 * u - 1 - c : c;
    const std::size_t xc = reverse_pivot_order ? static_cast<std::size_t>(u - 1 - c)
                                               : static_cast<std::size_t>(u + c);
    if (sol->get(zc)) p.z.set(c);
    if (sol->get(xc)) p.x.set(c);
  }
  for (std::size_t e = 0; e < set.s1.size(); ++e)
    internal_assert(boundary_syndrome_bit(set.s1[e], p) == corrected[e],
                    "rec: solution does not reproduce corrected syndromes");
  return p;
}

/// Per-surface residual corrections and the logical failure flags.
struct RepResult {
  std::vector<BitVector> rep_x;  // per surface: Z-type support, length n
  std::vector<BitVector> rep_z;  // per surface: X-type support, length n
  std::vector<std::uint8_t> logical_x_flags;              // per logical qubit
  std::vector<std::vector<std::uint8_t>> logical_zz_flags;  // [pair][qubit]
  bool rep_optimal = true;

  int weight() const {
    std::size_t w = 0;
    for (const auto& v : rep_x) w += v.weight();
    for (const auto& v : rep_z) w += v.weight();
    return static_cast<int>(w);
  }

  bool any_logical() const {
    for (auto f : logical_x_flags)
      if (f) return true;
    for (const auto& pair : logical_zz_flags)
      for (auto f : pair)
        if (f) return true;
    return false;
  }
};

struct RepDecoders {
  CosetDecoder hx, hz;
};

inline RepDecoders make_rep_decoders(const CssCode& code) {
  std::vector<BitVector> rx, rz;
  for (std::size_t r = 0; r < code.hx.rows(); ++r) rx.push_back(code.hx.row(r));
  for (std::size_t r = 0; r < code.hz.rows(); ++r) rz.push_back(code.hz.row(r));
  return {CosetDecoder::build(std::move(rx), code.n),
          CosetDecoder::build(std::move(rz), code.n)};
}

/// Rep: per surface, the minimum-weight boundary correction consistent with
/// the residual syndromes of that surface's checks, plus the logical flags
/// after that correction. A set logical flag is the operational failure.
inline RepResult rep(const CssCode& code, const StabilizerSet& set,
                     const RepDecoders& decoders, const LogicalBasis& lb,
                     const std::vector<std::uint8_t>& resid, const DecoderConfig& cfg) {
  const int m = set.n_surfaces();
  RepResult out;
  out.rep_x.reserve(m);
  out.rep_z.reserve(m);
  for (int j = 0; j < m; ++j) {
    BitVector sx(code.mx), sz(code.mz);
    for (int c = 0; c < code.mx; ++c)
      if (resid[set.surf_x_idx[j][c]]) sx.set(c);
    for (int c = 0; c < code.mz; ++c)
      if (resid[set.surf_z_idx[j][c]]) sz.set(c);
    auto ex = decoders.hx.decode(sx, cfg.mode, cfg.exact_cap);
    auto ez = decoders.hz.decode(sz, cfg.mode, cfg.exact_cap);
    out.rep_optimal = out.rep_optimal && ex.optimal && ez.optimal;
    out.rep_x.push_back(std::move(ex.x));
    out.rep_z.push_back(std::move(ez.x));
  }
  const int k = code.k;
  out.logical_x_flags.assign(k, 0);
  for (int q = 0; q < k; ++q) {
    std::uint8_t f = resid[set.logical_x_idx[q]];
    for (int j = 0; j < m; ++j) f ^= BitVector::dot(out.rep_x[j], lb.x[q]);
    out.logical_x_flags[q] = f;
  }
  out.logical_zz_flags.assign(std::max(0, m - 1), std::vector<std::uint8_t>(k, 0));
  for (int j = 0; j + 1 < m; ++j)
    for (int q = 0; q < k; ++q) {
      std::uint8_t f = resid[set.logical_zz_idx[j][q]];
      f ^= BitVector::dot(out.rep_z[j], lb.z[q]);
      f ^= BitVector::dot(out.rep_z[j + 1], lb.z[q]);
      out.logical_zz_flags[j][q] = f;
    }
  return out;
}

struct TrialOutcome {
  bool success = false;
  bool cc_x_ok = true, cc_z_ok = true;
  bool cluster_weight_x_ok = true, cluster_weight_z_ok = true;
  int eta_weight = 0, beta_weight = 0, residual_weight = 0;
  bool decode_optimal = false;
  std::vector<std::uint8_t> logical_x_flags;
  std::vector<std::vector<std::uint8_t>> logical_zz_flags;
  ClusterReport x_clusters, z_clusters;
};

/// Everything immutable a trial needs, owned by value so contexts cannot
/// dangle; share one context across threads.
struct TrialContext {
  AtgGraph g;
  StabilizerSet set;
  LogicalBasis lb;
  CosetDecoder bulk;
  RepDecoders repd;
  SyndromeAdjGraph sag_x, sag_z;
  NoiseConfig noise;
  DecoderConfig dec;
  std::uint64_t stream = 0;
};

inline TrialContext make_trial_context(const AtgGraph& g, const StabilizerSet& set,
                                       const LogicalBasis& lb, const NoiseConfig& noise,
                                       const DecoderConfig& dec, std::uint64_t stream = 0) {
  TrialContext ctx;
  ctx.g = g;
  ctx.set = set;
  ctx.lb = lb;
  ctx.bulk = make_bulk_decoder(set);
  ctx.repd = make_rep_decoders(g.code);
  ctx.sag_x = build_sag(g, set.pattern, 'X');
  ctx.sag_z = build_sag(g, set.pattern, 'Z');
  ctx.noise = noise;
  ctx.dec = dec;
  ctx.stream = stream;
  return ctx;
}

/// One full frame-simulated preparation trial:
/// sample -> meta syndromes -> minimum-weight bulk decode -> residual
/// syndromes -> per-surface Rep + logical flags -> cluster analysis.
inline TrialOutcome run_trial(const TrialContext& ctx, std::uint64_t trial) {
  Rng rng(trial_seed(ctx.noise.seed, ctx.stream, trial));
  const ErrorPattern eta = sample_error(ctx.g, ctx.set.pattern, ctx.noise, rng);
  const auto meta = extract_meta_syndromes(ctx.set, eta.bits);
  const DecodeResult dr = min_weight_bulk_decode(ctx.bulk, meta, ctx.dec);
  const auto resid = residual_syndromes(ctx.set, eta.bits, dr.beta);
  const RepResult rr = rep(ctx.g.code, ctx.set, ctx.repd, ctx.lb, resid, ctx.dec);

  TrialOutcome out;
  out.eta_weight = eta.weight();
  out.beta_weight = dr.weight;
  out.decode_optimal = dr.optimal;
  out.residual_weight = rr.weight();
  out.logical_x_flags = rr.logical_x_flags;
  out.logical_zz_flags = rr.logical_zz_flags;
  out.success = !rr.any_logical();

  const BitVector diff = eta.bits ^ dr.beta;
  const auto marked_x = mark_mismatch(ctx.sag_x, diff, rr.rep_x);
  const auto marked_z = mark_mismatch(ctx.sag_z, diff, rr.rep_z);
  out.x_clusters = components(ctx.sag_x, marked_x, eta.bits, dr.beta);
  out.z_clusters = components(ctx.sag_z, marked_z, eta.bits, dr.beta);
  out.cc_x_ok = out.x_clusters.cc_ok;
  out.cc_z_ok = out.z_clusters.cc_ok;
  out.cluster_weight_x_ok = check_cluster_weight(out.x_clusters);
  out.cluster_weight_z_ok = check_cluster_weight(out.z_clusters);
  return out;
}

}  // namespace atg
