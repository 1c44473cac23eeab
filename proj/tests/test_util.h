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

// Independent reference checks and random inputs shared by the tests.
// Nothing here calls into the library's own checkers.

#ifndef MVDLIB_TESTS_TEST_UTIL_H_
#define MVDLIB_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "mvdlib/core.h"
#include "mvdlib/corrclust.h"

namespace mvd::testing {

// Ordered-triple check of y(i,j) <= y(i,k) + y(k,j).
inline bool naive_is_metric(const DistanceMatrix& y) {
  const int n = y.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (i != j && j != k && i != k && y(i, j) > y(i, k) + y(k, j))
          return false;
  return true;
}

// Ordered-triple check of y(i,j) <= max(y(i,k), y(k,j)).
inline bool naive_is_ultrametric(const DistanceMatrix& y) {
  const int n = y.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (i != j && j != k && i != k &&
            y(i, j) > std::max(y(i, k), y(k, j)))
          return false;
  return true;
}

// Unordered triples {i<j<k} that violate the respective rule.
inline std::set<std::tuple<int, int, int>> naive_bad_triples(
    const DistanceMatrix& y, bool ultra) {
  std::set<std::tuple<int, int, int>> out;
  const int n = y.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double a = y(i, j), b = y(i, k), c = y(j, k);
        bool bad;
        if (ultra) {
          const double m = std::max({a, b, c});
          bad = (a == m) + (b == m) + (c == m) == 1;
        } else {
          bad = a > b + c || b > a + c || c > a + b;
        }
        if (bad) out.insert({i, j, k});
      }
  return out;
}

inline int naive_diff_count(const DistanceMatrix& x, const DistanceMatrix& y) {
  int count = 0;
  for (int i = 0; i < x.size(); ++i)
    for (int j = i + 1; j < x.size(); ++j) count += x(i, j) != y(i, j);
  return count;
}

// Integer distances in [lo, hi].
inline DistanceMatrix random_matrix(int n, int lo, int hi,
                                    std::mt19937_64& rng) {
  std::uniform_int_distribution<int> v(lo, hi);
  DistanceMatrix x(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) x.set(i, j, v(rng));
  return x;
}

// Each pair is + with probability p.
inline SignedGraph random_signed_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution plus(p);
  SignedGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (plus(rng)) g.add_plus(i, j);
  return g;
}

// Disjoint + cliques of the given sizes, numbered group by group.
inline SignedGraph cliques(const std::vector<int>& sizes) {
  int n = 0;
  for (int s : sizes) n += s;
  SignedGraph g(n);
  int base = 0;
  for (int s : sizes) {
    for (int a = 0; a < s; ++a)
      for (int b = a + 1; b < s; ++b) g.add_plus(base + a, base + b);
    base += s;
  }
  return g;
}

inline std::vector<int> iota_vec(int n, int from = 0) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[k] = from + k;
  return v;
}

}  // namespace mvd::testing

#endif  // MVDLIB_TESTS_TEST_UTIL_H_
