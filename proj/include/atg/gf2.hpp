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
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace atg {

/// Packed bit vector over GF(2). Bits beyond size() in the last word are
/// kept zero, so whole-word operations (xor, popcount) need no masking.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t len) : len_(len), w_((len + 63) / 64, 0) {}

  static BitVector from_bits(std::initializer_list<int> bits) {
    BitVector v(bits.size());
    std::size_t i = 0;
    for (int b : bits) v.set(i++, b != 0);
    return v;
  }

  static BitVector from_string(const std::string& s) {
    BitVector v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("bit string must be 0/1");
      v.set(i, s[i] == '1');
    }
    return v;
  }

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool value = true) {
    const std::uint64_t mask = std::uint64_t(1) << (i & 63);
    if (value)
      w_[i >> 6] |= mask;
    else
      w_[i >> 6] &= ~mask;
  }

  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  std::size_t weight() const {
    std::size_t c = 0;
    for (std::uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  bool none() const {
    for (std::uint64_t w : w_)
      if (w) return false;
    return true;
  }

  bool any() const { return !none(); }

  BitVector& operator^=(const BitVector& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }

  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  BitVector& operator&=(const BitVector& o) {
    check_same_size(o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }

  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  bool operator==(const BitVector&) const = default;

  /// Parity of |a AND b|, i.e. the GF(2) inner product.
  static bool dot(const BitVector& a, const BitVector& b) {
    a.check_same_size(b);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.w_.size(); ++i) acc ^= a.w_[i] & b.w_[i];
    return std::popcount(acc) & 1;
  }

  bool intersects(const BitVector& o) const {
    check_same_size(o);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  /// Orders supports as ascending index sequences: the vector owning the
  /// first coordinate where the two differ is the smaller one.
  /// Returns -1, 0 or +1.
  static int support_compare(const BitVector& a, const BitVector& b) {
    a.check_same_size(b);
    for (std::size_t i = 0; i < a.w_.size(); ++i) {
      const std::uint64_t diff = a.w_[i] ^ b.w_[i];
      if (diff) {
        const std::uint64_t low = diff & ~(diff - 1);
        return (a.w_[i] & low) ? -1 : 1;
      }
    }
    return 0;
  }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t w = w_[i];
      while (w) {
        out.push_back(i * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
    return out;
  }

  std::string to_string01() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

 private:
  void check_same_size(const BitVector& o) const {
    if (len_ != o.len_) throw std::invalid_argument("BitVector size mismatch");
  }

  std::size_t len_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Row-major bit-packed matrix over GF(2).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), row_(rows, BitVector(cols)) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.row_[i].set(i);
    return m;
  }

  static BitMatrix from_rows(std::vector<BitVector> rows) {
    BitMatrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows)
      if (r.size() != m.cols_) throw std::invalid_argument("ragged rows");
    m.row_ = std::move(rows);
    return m;
  }

  static BitMatrix from_dense(const std::vector<std::vector<int>>& bits) {
    BitMatrix m(bits.size(), bits.empty() ? 0 : bits[0].size());
    for (std::size_t r = 0; r < bits.size(); ++r) {
      if (bits[r].size() != m.cols_) throw std::invalid_argument("ragged rows");
      for (std::size_t c = 0; c < m.cols_; ++c)
        if (bits[r][c]) m.row_[r].set(c);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return row_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { row_[r].set(c, v); }

  const BitVector& row(std::size_t r) const { return row_[r]; }
  BitVector& row(std::size_t r) { return row_[r]; }

  bool operator==(const BitMatrix&) const = default;

  /// Matrix-vector product m*x over GF(2).
  BitVector mul(const BitVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("mul: dimension mismatch");
    BitVector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      if (BitVector::dot(row_[r], x)) y.set(r);
    return y;
  }

  BitMatrix transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (row_[r].get(c)) t.row_[c].set(r);
    return t;
  }

  /// Kronecker product.
  static BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
      for (std::size_t ac = 0; ac < a.cols(); ++ac) {
        if (!a.get(ar, ac)) continue;
        for (std::size_t br = 0; br < b.rows(); ++br)
          for (std::size_t bc = 0; bc < b.cols(); ++bc)
            if (b.get(br, bc)) out.set(ar * b.rows() + br, ac * b.cols() + bc);
      }
    return out;
  }

  /// Horizontal concatenation [a | b].
  static BitMatrix hstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    BitMatrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c)
        if (a.get(r, c)) out.set(r, c);
      for (std::size_t c = 0; c < b.cols(); ++c)
        if (b.get(r, c)) out.set(r, a.cols() + c);
    }
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BitVector> row_;
};

/// Reduced row echelon form. Pivot scan is left-to-right over columns,
/// top-to-bottom over rows; the input order fixes the result, making every
/// downstream solve/nullspace computation deterministic.
struct Rref {
  BitMatrix mat;
  std::vector<std::size_t> pivot_cols;  // one per pivot row, ascending
};

inline Rref rref(BitMatrix m) {
  Rref out;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t r = pivot_row;
    while (r < m.rows() && !m.get(r, col)) ++r;
    if (r == m.rows()) continue;
    std::swap(m.row(r), m.row(pivot_row));
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != pivot_row && m.get(i, col)) m.row(i) ^= m.row(pivot_row);
    out.pivot_cols.push_back(col);
    ++pivot_row;
  }
  out.mat = std::move(m);
  return out;
}

inline std::size_t rank(const BitMatrix& m) { return rref(m).pivot_cols.size(); }

/// Solves m*x = y. Returns the pivot solution (free variables zero) or
/// nullopt when the system is inconsistent.
inline std::optional<BitVector> solve(const BitMatrix& m, const BitVector& y) {
  if (y.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  BitMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) aug.set(r, c);
    if (y.get(r)) aug.set(r, m.cols());
  }
  Rref rr = rref(std::move(aug));
  if (!rr.pivot_cols.empty() && rr.pivot_cols.back() == m.cols()) return std::nullopt;
  BitVector x(m.cols());
  for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
    if (rr.mat.get(i, m.cols())) x.set(rr.pivot_cols[i]);
  return x;
}

/// Basis of {x : m*x = 0}, one vector per free column, ascending.
inline std::vector<BitVector> nullspace_basis(const BitMatrix& m) {
  Rref rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : rr.pivot_cols) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(m.cols());
    v.set(f);
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
      if (rr.mat.get(i, f)) v.set(rr.pivot_cols[i]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Incremental row-space membership tester.
class RowSpace {
 public:
  explicit RowSpace(std::size_t cols) : cols_(cols) {}

  explicit RowSpace(const BitMatrix& m) : cols_(m.cols()) {
    for (std::size_t r = 0; r < m.rows(); ++r) add(m.row(r));
  }

  // Returns true if v was independent (and absorbs it).
  bool add(BitVector v) {
    reduce(v);
    if (v.none()) return false;
    const std::size_t lead = v.ones().front();
    for (auto& [l, b] : basis_)
      if (b.get(lead)) b ^= v;
    basis_.emplace_back(lead, std::move(v));
    return true;
  }

  bool contains(BitVector v) const {
    reduce(v);
    return v.none();
  }

  std::size_t rank() const { return basis_.size(); }

 private:
  void reduce(BitVector& v) const {
    for (const auto& [lead, b] : basis_)
      if (v.get(lead)) v ^= b;
  }

  std::size_t cols_;
  std::vector<std::pair<std::size_t, BitVector>> basis_;
};

}  // namespace atg
