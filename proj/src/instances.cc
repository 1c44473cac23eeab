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

#include "mvdlib/instances.h"

#include <bit>
#include <cmath>
#include <random>
#include <string>
#include <utility>

namespace mvd {

DistanceMatrix gen_star(int m) {
  if (m < 1) throw Error("star needs at least one spoke");
  DistanceMatrix x(m + 2);
  x.set(kStarV, kStarW, 2.0 * m + 1);
  for (int k = 1; k <= m; ++k) {
    x.set(kStarV, star_spoke(k), k);
    x.set(kStarW, star_spoke(k), k);
    for (int j = 1; j < k; ++j) x.set(star_spoke(j), star_spoke(k), j + k);
  }
  return x;
}

DistanceMatrix hypercube_base(int d) {
  if (d < 1 || d > 12) throw Error("hypercube depth must be in [1, 12]");
  const int n = 1 << d;
  DistanceMatrix x(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      // Highest differing bit decides the common prefix length.
      const int prefix = d - std::bit_width(static_cast<unsigned>(a ^ b));
      x.set(a, b, d - prefix);
    }
  }
  return x;
}

DistanceMatrix gen_hypercube(int d) {
  DistanceMatrix x = hypercube_base(d);
  const int n = x.size();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (std::popcount(static_cast<unsigned>(a ^ b)) == 1) x.set(a, b, d + 1);
    }
  }
  return x;
}

namespace {

void check_fraction(double f) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw Error("flip fraction must lie in [0, 1]");
  }
}

// Indices of round(f * m) distinct pairs, by partial Fisher-Yates.
std::vector<std::size_t> pick_pairs(std::size_t m, double f,
                                    std::mt19937_64& rng) {
  const auto count = static_cast<std::size_t>(std::llround(f * m));
  std::vector<std::size_t> idx(m);
  for (std::size_t k = 0; k < m; ++k) idx[k] = k;
  for (std::size_t k = 0; k < count; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, m - 1);
    std::swap(idx[k], idx[pick(rng)]);
  }
  idx.resize(count);
  return idx;
}

void split_group(const std::vector<int>& group, int level, DistanceMatrix& x,
                 std::mt19937_64& rng) {
  if (group.size() < 2) return;
  if (level == 1) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        x.set(group[a], group[b], 1.0);
      }
    }
    return;
  }
  std::uniform_int_distribution<int> arity(2, 3);
  std::vector<std::vector<int>> children(arity(rng));
  std::uniform_int_distribution<std::size_t> child(0, children.size() - 1);
  for (int p : group) children[child(rng)].push_back(p);
  for (std::size_t a = 0; a < children.size(); ++a) {
    for (std::size_t b = a + 1; b < children.size(); ++b) {
      for (int u : children[a]) {
        for (int v : children[b]) x.set(u, v, level);
      }
    }
  }
  for (const auto& c : children) split_group(c, level - 1, x, rng);
}

double ceil_to_grid(double v) {
  return std::ceil(v / kMetricGrid) * kMetricGrid;
}

}  // namespace

NoisyInstance gen_random_ultra_noise(int n, int levels, double flip_fraction,
                                     std::uint64_t seed) {
  check_fraction(flip_fraction);
  if (levels < 1) throw Error("need at least one level");
  std::mt19937_64 rng(seed);
  DistanceMatrix clean(n);
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[i] = i;
  split_group(all, levels, clean, rng);

  DistanceMatrix noised = clean;
  const std::vector<Pair> pairs = all_pairs(n);
  const auto flips = pick_pairs(pairs.size(), flip_fraction, rng);
  if (!flips.empty() && levels < 2) {
    throw Error("flipping needs at least two levels");
  }
  std::uniform_int_distribution<int> other(1, levels - 1);
  for (std::size_t k : flips) {
    const int current = static_cast<int>(clean.at(pairs[k]));
    int level = other(rng);
    if (level >= current) ++level;
    noised.set(pairs[k], level);
  }
  return {std::move(noised), std::move(clean)};
}

NoisyInstance gen_random_metric_noise(int n, double flip_fraction,
                                      std::uint64_t seed) {
  check_fraction(flip_fraction);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::vector<std::pair<double, double>> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    p.first = coord(rng);
    p.second = coord(rng);
  }
  DistanceMatrix clean(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = pts[i].first - pts[j].first;
      const double dy = pts[i].second - pts[j].second;
      clean.set(i, j, ceil_to_grid(std::hypot(dx, dy)));
    }
  }
  DistanceMatrix noised = clean;
  const std::vector<Pair> pairs = all_pairs(n);
  std::uniform_real_distribution<double> factor(0.0, 3.0);
  for (std::size_t k : pick_pairs(pairs.size(), flip_fraction, rng)) {
    noised.set(pairs[k], ceil_to_grid(clean.at(pairs[k]) * factor(rng)));
  }
  return {std::move(noised), std::move(clean)};
}

PlantedGraph gen_planted_cc(std::span<const int> sizes, double flip_fraction,
                            std::uint64_t seed) {
  check_fraction(flip_fraction);
  Clustering planted;
  int n = 0;
  for (int s : sizes) {
    if (s < 1) throw Error("planted group sizes must be positive");
    std::vector<int> group;
    for (int k = 0; k < s; ++k) group.push_back(n++);
    planted.clusters.push_back(std::move(group));
  }
  if (n == 0) throw Error("no planted groups");
  const std::vector<int> label = planted.labels(n);
  const std::vector<Pair> pairs = all_pairs(n);
  std::vector<std::uint8_t> plus(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    plus[k] = label[pairs[k].i] == label[pairs[k].j];
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k : pick_pairs(pairs.size(), flip_fraction, rng)) {
    plus[k] = !plus[k];
  }
  SignedGraph g(n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (plus[k]) g.add_plus(pairs[k].i, pairs[k].j);
  }
  return {std::move(g), std::move(planted)};
}

}  // namespace mvd
