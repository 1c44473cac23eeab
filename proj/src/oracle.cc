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

#include "mvdlib/oracle.h"

#include <algorithm>
#include <limits>
#include <string>

namespace mvd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Closure { kSum, kMax };

// Dense n x n closure with removed pairs at infinity.
std::vector<double> path_closure(const DistanceMatrix& x,
                                 std::span<const Pair> removed,
                                 Closure mode) {
  const int n = x.size();
  std::vector<double> d(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[i * n + j] = x(i, j);
  }
  for (const Pair& p : removed) {
    d[p.i * n + p.j] = kInf;
    d[p.j * n + p.i] = kInf;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const double dik = d[i * n + k];
      if (dik == kInf) continue;
      for (int j = 0; j < n; ++j) {
        const double via = mode == Closure::kSum ? dik + d[k * n + j]
                                                 : std::max(dik, d[k * n + j]);
        if (via < d[i * n + j]) d[i * n + j] = via;
      }
    }
  }
  return d;
}

DistanceMatrix capped(const std::vector<double>& d, int n, double cap) {
  DistanceMatrix y(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) y.set(i, j, std::min(d[i * n + j], cap));
  }
  return y;
}

double metric_cap(const DistanceMatrix& x) {
  double sum = 0.0;
  for (double v : x.packed()) sum += v;
  return 1.0 + sum;
}

// True iff every kept pair equals its closure value (no strictly shorter
// alternative path).
bool kept_pairs_tight(const DistanceMatrix& x, const std::vector<double>& d,
                      const std::vector<std::uint8_t>& removed) {
  const int n = x.size();
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++idx) {
      if (!removed[idx] && d[i * n + j] < x(i, j)) return false;
    }
  }
  return true;
}

OracleResult exact(const DistanceMatrix& x, int max_n, Closure mode) {
  const int n = x.size();
  if (n > max_n) {
    throw Error("exact oracle limited to n <= " + std::to_string(max_n) +
                ", got n=" + std::to_string(n));
  }
  const std::vector<Pair> pairs = all_pairs(n);
  const int m = static_cast<int>(pairs.size());
  OracleResult result;
  std::vector<std::uint8_t> removed(pairs.size(), 0);
  std::vector<Pair> chosen;
  for (int k = 0; k <= m; ++k) {
    std::vector<int> comb(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) comb[a] = a;
    for (;;) {
      std::fill(removed.begin(), removed.end(), 0);
      chosen.clear();
      for (int a : comb) {
        removed[a] = 1;
        chosen.push_back(pairs[a]);
      }
      ++result.subsets_checked;
      if (kept_pairs_tight(x, path_closure(x, chosen, mode), removed)) {
        result.cost = k;
        result.hitting_set = chosen;
        result.witness = mode == Closure::kSum
                             ? metric_completion(x, chosen)
                             : ultrametric_completion(x, chosen);
        return result;
      }
      // Next k-combination of [0, m) in lexicographic order.
      int a = k - 1;
      while (a >= 0 && comb[a] == m - k + a) --a;
      if (a < 0) break;
      ++comb[a];
      for (int b = a + 1; b < k; ++b) comb[b] = comb[b - 1] + 1;
    }
  }
  throw Error("internal error: removing every pair must be feasible");
}

}  // namespace

DistanceMatrix metric_completion(const DistanceMatrix& x,
                                 std::span<const Pair> removed) {
  return capped(path_closure(x, removed, Closure::kSum), x.size(),
                metric_cap(x));
}

DistanceMatrix ultrametric_completion(const DistanceMatrix& x,
                                      std::span<const Pair> removed) {
  return capped(path_closure(x, removed, Closure::kMax), x.size(),
                1.0 + x.max_value());
}

OracleResult exact_mvd(const DistanceMatrix& x, int max_n) {
  return exact(x, max_n, Closure::kSum);
}

OracleResult exact_umvd(const DistanceMatrix& x, int max_n) {
  return exact(x, max_n, Closure::kMax);
}

}  // namespace mvd
