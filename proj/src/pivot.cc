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

#include "mvdlib/pivot.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <utility>

namespace mvd {

PivotSource PivotSource::Seeded(std::uint64_t seed) {
  PivotSource s;
  s.seed_ = seed;
  return s;
}

PivotSource PivotSource::Explicit(std::vector<int> sequence) {
  PivotSource s;
  s.explicit_ = true;
  s.sequence_ = std::move(sequence);
  return s;
}

std::vector<PairChange> apply_metric_pivot(DistanceMatrix& x, int pivot,
                                           std::span<const int> live) {
  std::vector<PairChange> changes;
  const auto from_pivot = x.row(pivot);
  for (std::size_t a = 0; a < live.size(); ++a) {
    const int j = live[a];
    const double xij = from_pivot[j];
    for (std::size_t b = a + 1; b < live.size(); ++b) {
      const int k = live[b];
      const double xik = from_pivot[k];
      const double xjk = x(j, k);
      double target = xjk;
      if (xjk > xij + xik) {
        target = xij + xik;
      } else if (xjk < std::abs(xij - xik)) {
        target = std::abs(xij - xik);
      }
      if (target != xjk) {
        x.assign(j, k, target);
        changes.push_back({Pair::Of(j, k), xjk, target});
      }
    }
  }
  return changes;
}

std::vector<PairChange> apply_ultrametric_pivot(DistanceMatrix& x, int pivot,
                                                std::span<const int> live) {
  std::vector<PairChange> changes;
  const auto from_pivot = x.row(pivot);
  for (std::size_t a = 0; a < live.size(); ++a) {
    const int j = live[a];
    const double xij = from_pivot[j];
    for (std::size_t b = a + 1; b < live.size(); ++b) {
      const int k = live[b];
      const double xik = from_pivot[k];
      const double xjk = x(j, k);
      const double target =
          xij == xik ? std::min(xjk, xij) : std::max(xij, xik);
      if (target != xjk) {
        x.assign(j, k, target);
        changes.push_back({Pair::Of(j, k), xjk, target});
      }
    }
  }
  return changes;
}

namespace {

// Position of each point in an explicit sequence, validated.
std::vector<int> sequence_positions(const std::vector<int>& sequence, int n) {
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (std::size_t r = 0; r < sequence.size(); ++r) {
    const int p = sequence[r];
    if (p < 0 || p >= n) {
      throw Error("pivot " + std::to_string(p) + " out of range for n=" +
                  std::to_string(n));
    }
    if (pos[p] >= 0) {
      throw Error("pivot " + std::to_string(p) + " appears twice");
    }
    pos[p] = static_cast<int>(r);
  }
  return pos;
}

void record_round(PivotTrace* trace, int n, int pivot,
                  std::vector<PairChange> changes) {
  if (trace == nullptr) return;
  for (const PairChange& c : changes) {
    ++trace->modification_count[pair_index(n, c.pair)];
  }
  trace->rounds.push_back({pivot, std::move(changes)});
}

using PivotStep = std::vector<PairChange> (*)(DistanceMatrix&, int,
                                              std::span<const int>);

// Pivots on the whole remaining instance, one point per round.
RepairResult run_sequential(const DistanceMatrix& x, const PivotSource& src,
                            const PivotOptions& options, PivotStep step) {
  const int n = x.size();
  DistanceMatrix y = x;
  std::optional<PivotTrace> trace;
  if (options.record_trace) {
    trace.emplace();
    trace->modification_count.assign(num_pairs(n), 0);
  }
  std::vector<int> live(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) live[i] = i;

  const int rounds = std::max(0, n - 2);
  if (src.is_explicit()) {
    sequence_positions(src.sequence(), n);
    if (static_cast<int>(src.sequence().size()) < rounds) {
      throw Error("insufficient pivots: need " + std::to_string(rounds) +
                  ", got " + std::to_string(src.sequence().size()));
    }
  }
  std::mt19937_64 rng(src.seed());
  for (int r = 0; r < rounds; ++r) {
    int pivot;
    if (src.is_explicit()) {
      pivot = src.sequence()[r];
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, live.size() - 1);
      pivot = live[pick(rng)];
    }
    live.erase(std::find(live.begin(), live.end(), pivot));
    auto changes = step(y, pivot, live);
    record_round(trace ? &*trace : nullptr, n, pivot, std::move(changes));
  }
  RepairResult result =
      make_repair_result(WeightedInstance(x), std::move(y), options.eq_tol);
  result.trace = std::move(trace);
  return result;
}

}  // namespace

RepairResult mvd_pivot(const DistanceMatrix& x, const PivotSource& pivots,
                       const PivotOptions& options) {
  return run_sequential(x, pivots, options, &apply_metric_pivot);
}

RepairResult umvd_pivot_literal(const DistanceMatrix& x,
                                const PivotSource& pivots,
                                const PivotOptions& options) {
  return run_sequential(x, pivots, options, &apply_ultrametric_pivot);
}

RepairResult umvd_pivot(const DistanceMatrix& x, const PivotSource& pivots,
                        const PivotOptions& options) {
  const int n = x.size();
  DistanceMatrix y = x;
  std::optional<PivotTrace> trace;
  if (options.record_trace) {
    trace.emplace();
    trace->modification_count.assign(num_pairs(n), 0);
  }
  std::vector<int> position;
  if (pivots.is_explicit()) position = sequence_positions(pivots.sequence(), n);
  std::mt19937_64 rng(pivots.seed());

  std::vector<std::vector<int>> pending;
  {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[i] = i;
    pending.push_back(std::move(all));
  }
  while (!pending.empty()) {
    std::vector<int> cluster = std::move(pending.back());
    pending.pop_back();
    if (cluster.size() <= 2) continue;

    int pivot = -1;
    if (pivots.is_explicit()) {
      int best = -1;
      for (int p : cluster) {
        if (position[p] >= 0 && (best < 0 || position[p] < best)) {
          best = position[p];
          pivot = p;
        }
      }
      if (pivot < 0) {
        throw Error("insufficient pivots: cluster of " +
                    std::to_string(cluster.size()) +
                    " points has no remaining pivot");
      }
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, cluster.size() - 1);
      pivot = cluster[pick(rng)];
    }
    cluster.erase(std::find(cluster.begin(), cluster.end(), pivot));
    auto changes = apply_ultrametric_pivot(y, pivot, cluster);
    record_round(trace ? &*trace : nullptr, n, pivot, std::move(changes));

    // Distinct clusters never interact again.
    for (PivotCluster& c : pivot_clusters(y, pivot, cluster)) {
      if (c.members.size() > 2) pending.push_back(std::move(c.members));
    }
  }
  RepairResult result =
      make_repair_result(WeightedInstance(x), std::move(y), options.eq_tol);
  result.trace = std::move(trace);
  return result;
}

std::vector<PivotCluster> pivot_clusters(const DistanceMatrix& x, int pivot,
                                         std::span<const int> live) {
  std::map<double, std::vector<int>> by_distance;
  for (int j : live) {
    if (j == pivot) continue;
    by_distance[x(pivot, j)].push_back(j);
  }
  std::vector<PivotCluster> out;
  out.reserve(by_distance.size());
  for (auto& [d, members] : by_distance) {
    std::sort(members.begin(), members.end());
    out.push_back({d, std::move(members)});
  }
  return out;
}

std::vector<PivotCluster> pivot_clusters(const DistanceMatrix& x, int pivot) {
  if (pivot < 0 || pivot >= x.size()) {
    throw Error("pivot " + std::to_string(pivot) + " out of range");
  }
  std::vector<int> others;
  for (int j = 0; j < x.size(); ++j) {
    if (j != pivot) others.push_back(j);
  }
  return pivot_clusters(x, pivot, others);
}

}  // namespace mvd
