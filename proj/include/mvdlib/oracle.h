// Copyright 2026 The mvdlib Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact minimum-l0 repair for tiny instances.
//
// A set S of pairs can be re-valued into a metric (ultrametric) while keeping
// every other pair fixed iff no kept pair is longer than the shortest
// (minimax) path between its endpoints through kept pairs, i.e. S hits every
// unbalanced cycle. The oracle enumerates S by increasing size and stops at
// the first feasible size; the witness is the path-closure completion.

#ifndef MVDLIB_ORACLE_H_
#define MVDLIB_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mvdlib/core.h"

namespace mvd {

struct OracleResult {
  int cost = 0;
  std::vector<Pair> hitting_set;  // lexicographically first of minimum size
  DistanceMatrix witness;
  std::int64_t subsets_checked = 0;
};

inline constexpr int kOracleMaxPoints = 7;

OracleResult exact_mvd(const DistanceMatrix& x,
                       int max_n = kOracleMaxPoints);
OracleResult exact_umvd(const DistanceMatrix& x,
                        int max_n = kOracleMaxPoints);

// Shortest-path closure with the pairs of `removed` deleted, capped at
// 1 + sum of all entries of x (so disconnected pairs get the cap).
DistanceMatrix metric_completion(const DistanceMatrix& x,
                                 std::span<const Pair> removed);

// Minimax-path closure (subdominant ultrametric) with `removed` deleted;
// disconnected pairs get 1 + max entry of x.
DistanceMatrix ultrametric_completion(const DistanceMatrix& x,
                                      std::span<const Pair> removed);

}  // namespace mvd

#endif  // MVDLIB_ORACLE_H_
