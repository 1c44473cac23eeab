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

#include "mvdlib/core.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace mvd {

std::size_t pair_index(int n, Pair p) {
  const auto i = static_cast<std::size_t>(p.i);
  const auto nn = static_cast<std::size_t>(n);
  return i * nn - i * (i + 1) / 2 + static_cast<std::size_t>(p.j - p.i - 1);
}

std::vector<Pair> all_pairs(int n) {
  std::vector<Pair> pairs;
  pairs.reserve(num_pairs(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  }
  return pairs;
}

DistanceMatrix::DistanceMatrix(int n, double fill) : n_(n) {
  if (n < 1) throw Error("DistanceMatrix needs at least one point");
  if (!(fill >= 0.0) || !std::isfinite(fill)) {
    throw Error("distances must be finite and nonnegative");
  }
  data_.assign(static_cast<std::size_t>(n) * n, fill);
  for (int i = 0; i < n; ++i) data_[static_cast<std::size_t>(i) * n + i] = 0;
}

DistanceMatrix DistanceMatrix::FromPacked(int n,
                                          std::span<const double> packed) {
  if (packed.size() != num_pairs(n)) {
    throw Error("expected " + std::to_string(num_pairs(n)) +
                " pair values for n=" + std::to_string(n) + ", got " +
                std::to_string(packed.size()));
  }
  DistanceMatrix x(n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) x.set(i, j, packed[k++]);
  }
  return x;
}

void DistanceMatrix::set(int i, int j, double value) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) {
    throw Error("invalid pair (" + std::to_string(i) + "," +
                std::to_string(j) + ") for n=" + std::to_string(n_));
  }
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw Error("distance for pair (" + std::to_string(i) + "," +
                std::to_string(j) + ") must be finite and nonnegative");
  }
  assign(i, j, value);
}

std::vector<double> DistanceMatrix::packed() const {
  std::vector<double> out;
  out.reserve(num_pairs(n_));
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) out.push_back((*this)(i, j));
  }
  return out;
}

DistanceMatrix DistanceMatrix::restricted(std::span<const int> points) const {
  DistanceMatrix sub(static_cast<int>(points.size()));
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      sub.assign(static_cast<int>(a), static_cast<int>(b),
                 (*this)(points[a], points[b]));
    }
  }
  return sub;
}

double DistanceMatrix::max_value() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, v);
  return m;
}

WeightedInstance::WeightedInstance(DistanceMatrix distances)
    : distances_(std::move(distances)), weights_(distances_.size(), 1.0) {}

WeightedInstance::WeightedInstance(DistanceMatrix distances,
                                   DistanceMatrix weights)
    : distances_(std::move(distances)), weights_(std::move(weights)) {
  if (weights_.size() != distances_.size()) {
    throw Error("weights and distances have different point counts");
  }
}

bool WeightedInstance::unit_weights() const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (weights_(i, j) != 1.0) return false;
    }
  }
  return true;
}

namespace {

// Orders the three edges of {i,j,k} by value, largest first.
struct SortedEdges {
  Pair edge[3];
  double value[3];
};

SortedEdges sort_edges(const DistanceMatrix& x, int i, int j, int k) {
  SortedEdges s{{{i, j}, {i, k}, {j, k}}, {x(i, j), x(i, k), x(j, k)}};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2 - a; ++b) {
      if (s.value[b] < s.value[b + 1]) {
        std::swap(s.value[b], s.value[b + 1]);
        std::swap(s.edge[b], s.edge[b + 1]);
      }
    }
  }
  return s;
}

}  // namespace

std::vector<Triangle> metric_violations(const DistanceMatrix& x, double tol) {
  std::vector<Triangle> out;
  const int n = x.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double xij = x(i, j);
      for (int k = j + 1; k < n; ++k) {
        const double xik = x(i, k);
        const double xjk = x(j, k);
        if (xij > xik + xjk + tol) {
          out.push_back({i, j, k, {i, j}, ViolationKind::kExcess});
        } else if (xik > xij + xjk + tol) {
          out.push_back({i, j, k, {i, k}, ViolationKind::kExcess});
        } else if (xjk > xij + xik + tol) {
          out.push_back({i, j, k, {j, k}, ViolationKind::kExcess});
        }
      }
    }
  }
  return out;
}

std::vector<Triangle> ultrametric_violations(const DistanceMatrix& x,
                                             double tol) {
  std::vector<Triangle> out;
  const int n = x.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const SortedEdges s = sort_edges(x, i, j, k);
        if (s.value[0] > s.value[1] + tol) {
          out.push_back({i, j, k, s.edge[0], ViolationKind::kExcess});
        }
      }
    }
  }
  return out;
}

bool is_metric(const DistanceMatrix& x, double tol) {
  const int n = x.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const SortedEdges s = sort_edges(x, i, j, k);
        if (s.value[0] > s.value[1] + s.value[2] + tol) return false;
      }
    }
  }
  return true;
}

bool is_ultrametric(const DistanceMatrix& x, double tol) {
  const int n = x.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const SortedEdges s = sort_edges(x, i, j, k);
        if (s.value[0] > s.value[1] + tol) return false;
      }
    }
  }
  return true;
}

namespace {

bool differs(double a, double b, double eq_tol) {
  return eq_tol == 0.0 ? a != b : std::abs(a - b) > eq_tol;
}

}  // namespace

double l0_cost(const WeightedInstance& x, const DistanceMatrix& y,
               double eq_tol) {
  if (x.size() != y.size()) {
    throw Error("l0_cost: instance has " + std::to_string(x.size()) +
                " points, candidate has " + std::to_string(y.size()));
  }
  double cost = 0.0;
  const int n = x.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (differs(x.distances()(i, j), y(i, j), eq_tol)) {
        cost += x.weight(i, j);
      }
    }
  }
  return cost;
}

double l0_cost(const DistanceMatrix& x, const DistanceMatrix& y,
               double eq_tol) {
  return l0_cost(WeightedInstance(x), y, eq_tol);
}

LevelMap::LevelMap(const DistanceMatrix& x) {
  levels_ = x.packed();
  std::sort(levels_.begin(), levels_.end());
  levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
}

double LevelMap::value(int t) const {
  if (t == 0) return 0.0;
  if (t < 0 || t > num_levels()) {
    throw Error("level " + std::to_string(t) + " out of range");
  }
  return levels_[static_cast<std::size_t>(t - 1)];
}

int LevelMap::index(double v) const {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), v);
  if (it == levels_.end() || *it != v) {
    throw Error("value " + std::to_string(v) + " is not a level");
  }
  return static_cast<int>(it - levels_.begin()) + 1;
}

LevelMap build_level_map(const DistanceMatrix& x) { return LevelMap(x); }

RepairResult make_repair_result(const WeightedInstance& x, DistanceMatrix y,
                                double eq_tol) {
  if (x.size() != y.size()) throw Error("repair output has wrong size");
  RepairResult result;
  const int n = x.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double before = x.distances()(i, j);
      if (differs(before, y(i, j), eq_tol)) {
        result.cost += x.weight(i, j);
        result.modified_pairs.push_back({{i, j}, before, y(i, j)});
      }
    }
  }
  result.output = std::move(y);
  return result;
}

}  // namespace mvd
