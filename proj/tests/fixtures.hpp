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

#include "atg/css_code.hpp"
#include "atg/rng.hpp"

namespace atg::fixtures {

// Parity check of the [7,4] Hamming code; rows are self-orthogonal.
inline BitMatrix hamming74() {
  return BitMatrix::from_dense({{0, 0, 0, 1, 1, 1, 1},
                                {0, 1, 1, 0, 0, 1, 1},
                                {1, 0, 1, 0, 1, 0, 1}});
}

// [[4,2,2]]: hx = hz = [1111].
inline CssCode code_422() {
  return validate_css(BitMatrix::from_dense({{1, 1, 1, 1}}),
                      BitMatrix::from_dense({{1, 1, 1, 1}}), "c422");
}

// Steane [[7,1,3]]: hx = hz = Hamming(7,4) check.
inline CssCode steane() {
  return validate_css(hamming74(), hamming74(), "steane");
}

// [[13,1,3]] hypergraph product of two [3,1] repetition-code checks
// (the distance-3 surface code).
inline CssCode hgp13() {
  const BitMatrix rep = BitMatrix::from_dense({{1, 1, 0}, {0, 1, 1}});
  return hypergraph_product(rep, rep, "hgp13");
}

// Random full-row-rank matrix, for property tests.
inline BitMatrix random_full_rank(Rng& rng, int rows, int cols) {
  for (;;) {
    BitMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (rng.next_u64() & 1) m.set(r, c);
    if (static_cast<int>(rank(m)) == rows) return m;
  }
}

// Random small CSS code via the hypergraph product of two random full-rank
// classical checks; always valid.
inline CssCode random_css(Rng& rng, int max_side = 3) {
  const int r1 = 1 + static_cast<int>(rng.below(max_side - 1));
  const int c1 = r1 + 1 + static_cast<int>(rng.below(2));
  const int r2 = 1 + static_cast<int>(rng.below(max_side - 1));
  const int c2 = r2 + 1 + static_cast<int>(rng.below(2));
  return hypergraph_product(random_full_rank(rng, r1, c1),
                            random_full_rank(rng, r2, c2), "rand_hgp");
}

}  // namespace atg::fixtures
