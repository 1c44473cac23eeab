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

// Instance generators. Every generator is a pure function of its arguments.

#ifndef MVDLIB_INSTANCES_H_
#define MVDLIB_INSTANCES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mvdlib/core.h"
#include "mvdlib/corrclust.h"

namespace mvd {

// Star: points v = 0, w = 1 and u_k = k + 1 for k in [1, m], with
// x(v,u_k) = x(w,u_k) = k, x(u_j,u_k) = j + k and x(v,w) = 2m + 1.
// The only unbalanced triangles are v w u_k; lowering x(v,w) alone repairs it.
DistanceMatrix gen_star(int m);

inline constexpr int kStarV = 0;
inline constexpr int kStarW = 1;
inline constexpr int star_spoke(int k) { return k + 1; }

// Noised hypercube on n = 2^d points labelled by d-bit strings (point p has
// label p, most significant bit first). The base distance is d minus the
// common-prefix length (a tree ultrametric); pairs at Hamming distance 1 are
// then set to d + 1.
DistanceMatrix gen_hypercube(int d);
// The base tree ultrametric without noise.
DistanceMatrix hypercube_base(int d);

struct NoisyInstance {
  DistanceMatrix noised;
  DistanceMatrix clean;
};

// Random hierarchy of `levels` levels (values 1..levels) over n points;
// each internal group splits into 2 or 3 random children. A flip_fraction of
// the pairs (rounded) are moved to a uniformly random different level.
NoisyInstance gen_random_ultra_noise(int n, int levels, double flip_fraction,
                                     std::uint64_t seed);

// Euclidean distances of n uniform points in [0,10)^2, rounded up to a
// multiple of 2^-10 (rounding up keeps the triangle inequality and makes every
// sum and difference exact). Flipped pairs are multiplied by a uniform factor
// in [0,3] and rounded up the same way.
NoisyInstance gen_random_metric_noise(int n, double flip_fraction,
                                      std::uint64_t seed);

inline constexpr double kMetricGrid = 1.0 / 1024.0;

struct PlantedGraph {
  SignedGraph graph;
  Clustering planted;
};

// Disjoint + cliques with the given sizes (vertices numbered group by group),
// - edges across, then a flip_fraction of all pairs (rounded) flipped.
PlantedGraph gen_planted_cc(std::span<const int> sizes, double flip_fraction,
                            std::uint64_t seed);

}  // namespace mvd

#endif  // MVDLIB_INSTANCES_H_
