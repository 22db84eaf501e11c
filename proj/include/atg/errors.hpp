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

#include <stdexcept>
#include <string>

namespace atg {

// Bad user input: malformed files, non-CSS matrices, dimension mismatches.
// The CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally impossible request (e.g. a GHZ pattern that does not fit in
// the graph). Exit code 3.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A broken internal invariant: factorization failure, decoder inconsistency,
// a cluster-weight violation in exact mode. Always a bug. Exit code 4.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void internal_assert(bool cond, const std::string& what) {
  if (!cond) throw InternalError(what);
}

}  // namespace atg
