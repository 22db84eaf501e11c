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

#include <optional>
#include <string>
#include <vector>

#include "atg/errors.hpp"
#include "atg/gf2.hpp"

namespace atg {

/// A CSS code given by two orthogonal full-row-rank parity check matrices.
/// X checks are rows of hx, Z checks rows of hz, hx * hz^T = 0.
struct CssCode {
  std::string name;
  BitMatrix hx;  // m_x x n
  BitMatrix hz;  // m_z x n
  int n = 0, mx = 0, mz = 0, k = 0;
  int ell = 0;               // LDPC locality parameter
  std::optional<int> d;      // exact distance when known

  bool operator==(const CssCode&) const = default;
};

namespace detail {

inline int ldpc_ell(const BitMatrix& hx, const BitMatrix& hz) {
  // Max of: any check weight, and any qubit's combined degree across both
  // matrices. The combined column notion is what the syndrome-adjacency
  // degree bound z <= ell*(ell+1) relies on.
  std::size_t ell = 0;
  for (std::size_t r = 0; r < hx.rows(); ++r) ell = std::max(ell, hx.row(r).weight());
  for (std::size_t r = 0; r < hz.rows(); ++r) ell = std::max(ell, hz.row(r).weight());
  for (std::size_t c = 0; c < hx.cols(); ++c) {
    std::size_t deg = 0;
    for (std::size_t r = 0; r < hx.rows(); ++r) deg += hx.get(r, c);
    for (std::size_t r = 0; r < hz.rows(); ++r) deg += hz.get(r, c);
    ell = std::max(ell, deg);
  }
  return static_cast<int>(ell);
}

}  // namespace detail

/// Validates (hx, hz) as a CSS code. Rejects non-orthogonal rows (naming the
/// offending pair) and rank-deficient matrices; the whole pipeline assumes
/// full row rank, so silent reduction would corrupt the graph shape.
inline CssCode validate_css(BitMatrix hx, BitMatrix hz, std::string name = "") {
  if (hx.cols() != hz.cols())
    throw ValidationError("hx and hz must act on the same number of qubits (" +
                          std::to_string(hx.cols()) + " vs " + std::to_string(hz.cols()) + ")");
  if (hx.rows() == 0 || hz.rows() == 0)
    throw ValidationError("hx and hz must each have at least one check");
  for (std::size_t a = 0; a < hx.rows(); ++a)
    for (std::size_t b = 0; b < hz.rows(); ++b)
      if (BitVector::dot(hx.row(a), hz.row(b)))
        throw ValidationError("CSS orthogonality violated: hx row " + std::to_string(a) +
                              " and hz row " + std::to_string(b) + " overlap oddly");
  if (rank(hx) != hx.rows())
    throw ValidationError("hx is not full row rank (rank " + std::to_string(rank(hx)) +
                          " of " + std::to_string(hx.rows()) + " rows)");
  if (rank(hz) != hz.rows())
    throw ValidationError("hz is not full row rank (rank " + std::to_string(rank(hz)) +
                          " of " + std::to_string(hz.rows()) + " rows)");

  CssCode code;
  code.name = std::move(name);
  code.n = static_cast<int>(hx.cols());
  code.mx = static_cast<int>(hx.rows());
  code.mz = static_cast<int>(hz.rows());
  code.k = code.n - code.mx - code.mz;
  if (code.k < 0)
    throw ValidationError("more independent checks than qubits (k would be negative)");
  code.ell = detail::ldpc_ell(hx, hz);
  code.hx = std::move(hx);
  code.hz = std::move(hz);
  return code;
}

/// X syndrome of a Z-type error e: hx * e.
inline BitVector syndrome_x(const CssCode& code, const BitVector& e) {
  if (static_cast<int>(e.size()) != code.n)
    throw ValidationError("syndrome_x: error length != n");
  return code.hx.mul(e);
}

/// Z syndrome of an X-type error e: hz * e.
inline BitVector syndrome_z(const CssCode& code, const BitVector& e) {
  if (static_cast<int>(e.size()) != code.n)
    throw ValidationError("syndrome_z: error length != n");
  return code.hz.mul(e);
}

/// Paired logical operator supports: x[i] * z[j] = delta_ij over GF(2).
struct LogicalBasis {
  std::vector<BitVector> x;  // supports of logical X operators (in ker hz)
  std::vector<BitVector> z;  // supports of logical Z operators (in ker hx)
};

/// Canonical logical basis. Representatives are fixed by Gaussian
/// elimination order, then the Z side is recombined so the symplectic
/// pairing is the identity. Minimum weight is not attempted; only supports
/// matter to the encoded stabilizers.
inline LogicalBasis logical_basis(const CssCode& code) {
  LogicalBasis lb;
  auto pick = [&](const BitMatrix& ker_of, const BitMatrix& mod_rows) {
    std::vector<BitVector> out;
    RowSpace span(mod_rows);
    for (auto& v : nullspace_basis(ker_of)) {
      if (span.add(v)) out.push_back(std::move(v));
      if (static_cast<int>(out.size()) == code.k) break;
    }
    internal_assert(static_cast<int>(out.size()) == code.k,
                    "logical_basis: quotient dimension != k");
    return out;
  };
  lb.x = pick(code.hz, code.hx);
  lb.z = pick(code.hx, code.hz);
  if (code.k == 0) return lb;

  // Pairing matrix M_ij = x_i . z_j is invertible; replace z by z * M^{-1}
  // so that the pairing is exactly the identity.
  const int k = code.k;
  BitMatrix pairing(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (BitVector::dot(lb.x[i], lb.z[j])) pairing.set(i, j);
  // Columns of M^{-1}: solve M * a_j = e_j.
  std::vector<BitVector> new_z;
  for (int j = 0; j < k; ++j) {
    BitVector ej(k);
    ej.set(j);
    auto a = solve(pairing, ej);
    internal_assert(a.has_value(), "logical_basis: degenerate symplectic pairing");
    BitVector zj(code.n);
    for (int l = 0; l < k; ++l)
      if (a->get(l)) zj ^= lb.z[l];
    new_z.push_back(std::move(zj));
  }
  lb.z = std::move(new_z);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      internal_assert(BitVector::dot(lb.x[i], lb.z[j]) == (i == j),
                      "logical_basis: pairing canonicalization failed");
  return lb;
}

/// Exact distance by exhaustive enumeration over all 2^n vectors.
/// Refuses when n exceeds cap.
inline int distance_bruteforce(const CssCode& code, int cap) {
  if (code.n > cap)
    throw ValidationError("distance_bruteforce: n=" + std::to_string(code.n) +
                          " exceeds cap=" + std::to_string(cap));
  const RowSpace row_x(code.hx), row_z(code.hz);
  int best = code.n + 1;
  for (std::uint64_t bits = 1; bits < (std::uint64_t(1) << code.n); ++bits) {
    const int w = std::popcount(bits);
    if (w >= best) continue;
    BitVector v(code.n);
    for (int i = 0; i < code.n; ++i)
      if ((bits >> i) & 1) v.set(i);
    const bool x_logical = code.hz.mul(v).none() && !row_x.contains(v);
    const bool z_logical = code.hx.mul(v).none() && !row_z.contains(v);
    if (x_logical || z_logical) best = w;
  }
  internal_assert(code.k == 0 || best <= code.n, "distance: no logical found");
  if (code.k == 0)
    throw ValidationError("distance_bruteforce: code has no logical qubits");
  return best;
}

/// The hypergraph product matrices of two classical checks:
///   HX = [h1 (x) I | I (x) h2^T],  HZ = [I (x) h2 | h1^T (x) I].
/// Orthogonality holds for any inputs; validation still checks it.
inline std::pair<BitMatrix, BitMatrix> hgp_matrices(const BitMatrix& h1, const BitMatrix& h2) {
  const auto i_c1 = BitMatrix::identity(h1.cols());
  const auto i_c2 = BitMatrix::identity(h2.cols());
  const auto i_r1 = BitMatrix::identity(h1.rows());
  const auto i_r2 = BitMatrix::identity(h2.rows());
  BitMatrix hx = BitMatrix::hstack(BitMatrix::kron(h1, i_c2),
                                   BitMatrix::kron(i_r1, h2.transposed()));
  BitMatrix hz = BitMatrix::hstack(BitMatrix::kron(i_c1, h2),
                                   BitMatrix::kron(h1.transposed(), i_r2));
  return {std::move(hx), std::move(hz)};
}

inline CssCode hypergraph_product(const BitMatrix& h1, const BitMatrix& h2,
                                  std::string name = "hgp") {
  auto [hx, hz] = hgp_matrices(h1, h2);
  return validate_css(std::move(hx), std::move(hz), std::move(name));
}

}  // namespace atg
