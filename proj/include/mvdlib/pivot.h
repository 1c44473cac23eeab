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

// Randomized pivot repair of distance data into metrics and ultrametrics.
//
// Each round picks a pivot, freezes its incident distances and minimally
// modifies the opposite edge of every triangle through the pivot so that the
// triangle becomes balanced. The pivot is then removed and the procedure
// continues on the remaining points until at most two are left.

#ifndef MVDLIB_PIVOT_H_
#define MVDLIB_PIVOT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mvdlib/core.h"

namespace mvd {

// Where pivots come from: a seeded uniform choice among the points still
// live in the current (sub)instance, or a caller-provided sequence.
class PivotSource {
 public:
  static PivotSource Seeded(std::uint64_t seed);
  static PivotSource Explicit(std::vector<int> sequence);

  bool is_explicit() const { return explicit_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<int>& sequence() const { return sequence_; }

 private:
  bool explicit_ = false;
  std::uint64_t seed_ = 0;
  std::vector<int> sequence_;
};

struct PivotOptions {
  bool record_trace = false;
  // Equality tolerance used only for cost accounting of the result.
  double eq_tol = 0.0;
};

// One metric pivot round at `pivot` over the points in `live` (which must not
// contain the pivot). Returns the changed pairs in iteration order.
std::vector<PairChange> apply_metric_pivot(DistanceMatrix& x, int pivot,
                                           std::span<const int> live);

// One ultrametric pivot round at `pivot` over `live`.
std::vector<PairChange> apply_ultrametric_pivot(DistanceMatrix& x, int pivot,
                                                std::span<const int> live);

// Repairs x into a metric. With an explicit source the first n-2 entries are
// used in order; a shorter sequence is rejected ("insufficient pivots").
RepairResult mvd_pivot(const DistanceMatrix& x, const PivotSource& pivots,
                       const PivotOptions& options = {});

// Repairs x into an ultrametric. Runs independently inside each cluster
// created by a pivot; with an explicit source each cluster consumes the
// subsequence of the global sequence restricted to its members.
RepairResult umvd_pivot(const DistanceMatrix& x, const PivotSource& pivots,
                        const PivotOptions& options = {});

// Same repair as umvd_pivot but pivoting on the whole remaining instance at
// every round, exactly as the textbook recursion. Used to cross-check the
// per-cluster implementation; outputs agree for every explicit sequence.
RepairResult umvd_pivot_literal(const DistanceMatrix& x,
                                const PivotSource& pivots,
                                const PivotOptions& options = {});

struct PivotCluster {
  double distance = 0.0;
  std::vector<int> members;  // ascending
};

// Groups the points of `live` (all points other than the pivot when omitted)
// by their distance to the pivot, by increasing distance.
std::vector<PivotCluster> pivot_clusters(const DistanceMatrix& x, int pivot);
std::vector<PivotCluster> pivot_clusters(const DistanceMatrix& x, int pivot,
                                         std::span<const int> live);

}  // namespace mvd

#endif  // MVDLIB_PIVOT_H_
