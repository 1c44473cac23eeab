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

#ifndef MVDLIB_CORE_H_
#define MVDLIB_CORE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvd {

// All library errors. Validation failures, bad arguments and internal
// guarantee violations are reported through this type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An unordered pair of distinct points, always stored with i < j.
struct Pair {
  int i = 0;
  int j = 0;

  static Pair Of(int a, int b) { return a < b ? Pair{a, b} : Pair{b, a}; }
  friend bool operator==(const Pair&, const Pair&) = default;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

inline std::size_t num_pairs(int n) {
  return n < 2 ? 0 : static_cast<std::size_t>(n) * (n - 1) / 2;
}

// Index of pair {i, j} in the row-major enumeration (0,1), (0,2), ...,
// (0,n-1), (1,2), ...
std::size_t pair_index(int n, Pair p);

// All pairs of [n] in pair_index order.
std::vector<Pair> all_pairs(int n);

// Symmetric matrix of nonnegative dissimilarities over n points. The diagonal
// is implicitly zero and never addressed. Values are kept dense (n*n) so the
// O(n^3) pivot loops touch contiguous rows.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n, double fill = 0.0);

  // Builds from C(n,2) values listed in pair_index order.
  static DistanceMatrix FromPacked(int n, std::span<const double> packed);

  int size() const { return n_; }

  double operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }
  double at(Pair p) const { return (*this)(p.i, p.j); }

  // Throws on i == j, out-of-range indices, negative or non-finite values.
  void set(int i, int j, double value);
  void set(Pair p, double value) { set(p.i, p.j, value); }

  // Unchecked write used by inner loops that only produce sums, differences,
  // minima and maxima of existing entries.
  void assign(int i, int j, double value) {
    data_[static_cast<std::size_t>(i) * n_ + j] = value;
    data_[static_cast<std::size_t>(j) * n_ + i] = value;
  }

  // Row view; row(i)[i] is always 0.
  std::span<const double> row(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * n_,
            static_cast<std::size_t>(n_)};
  }

  std::vector<double> packed() const;

  // Submatrix on the listed points, reindexed 0..k-1 in list order.
  DistanceMatrix restricted(std::span<const int> points) const;

  double max_value() const;

  friend bool operator==(const DistanceMatrix&,
                         const DistanceMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

// Distances together with nonnegative per-pair weights (default 1).
class WeightedInstance {
 public:
  WeightedInstance() = default;
  explicit WeightedInstance(DistanceMatrix distances);
  WeightedInstance(DistanceMatrix distances, DistanceMatrix weights);

  int size() const { return distances_.size(); }
  const DistanceMatrix& distances() const { return distances_; }
  const DistanceMatrix& weights() const { return weights_; }
  double weight(int i, int j) const { return weights_(i, j); }
  bool unit_weights() const;

 private:
  DistanceMatrix distances_;
  DistanceMatrix weights_;
};

enum class ViolationKind : std::uint8_t {
  kExcess,   // edge longer than allowed by the other two
  kDeficit,  // edge shorter than |difference| of the other two
};

// An unbalanced triangle {i, j, k} (i < j < k). `edge` is the offending edge.
// Enumeration always reports the excess edge: in a metric-unbalanced
// triangle the strictly longest edge is in excess and each shorter edge is
// the corresponding deficit edge; in ultrametric mode the edge is the unique
// maximum.
struct Triangle {
  int i = 0;
  int j = 0;
  int k = 0;
  Pair edge;
  ViolationKind kind = ViolationKind::kExcess;

  friend bool operator==(const Triangle&, const Triangle&) = default;
  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

// Unbalanced triangles under x(i,j) <= x(i,k) + x(k,j). A triangle counts as
// unbalanced only when its longest edge exceeds the sum of the others by
// more than `tol` (default: exact comparison).
std::vector<Triangle> metric_violations(const DistanceMatrix& x,
                                        double tol = 0.0);

// Unbalanced triangles under x(i,j) <= max(x(i,k), x(k,j)): the largest value
// is unique (and exceeds the runner-up by more than `tol`).
std::vector<Triangle> ultrametric_violations(const DistanceMatrix& x,
                                             double tol = 0.0);

bool is_metric(const DistanceMatrix& x, double tol = 0.0);
bool is_ultrametric(const DistanceMatrix& x, double tol = 0.0);

// Weighted count of pairs with |x - y| > eq_tol (eq_tol = 0: bitwise-exact
// inequality of the values).
double l0_cost(const WeightedInstance& x, const DistanceMatrix& y,
               double eq_tol = 0.0);
double l0_cost(const DistanceMatrix& x, const DistanceMatrix& y,
               double eq_tol = 0.0);

// Sorted distinct distance values w_1 < ... < w_L. Levels are 1-based.
class LevelMap {
 public:
  LevelMap() = default;
  explicit LevelMap(const DistanceMatrix& x);

  int num_levels() const { return static_cast<int>(levels_.size()); }
  // w_t for t in [1, L]; value(0) is the bottom sentinel 0.
  double value(int t) const;
  // t with w_t == v. Throws if v is not a level value.
  int index(double v) const;
  const std::vector<double>& levels() const { return levels_; }

 private:
  std::vector<double> levels_;
};

LevelMap build_level_map(const DistanceMatrix& x);

struct PairChange {
  Pair pair;
  double old_value = 0.0;
  double new_value = 0.0;

  friend bool operator==(const PairChange&, const PairChange&) = default;
};

// Per-round log of a pivot run plus cumulative per-pair modification counts.
struct PivotTrace {
  struct Round {
    int pivot = 0;
    std::vector<PairChange> changes;
  };
  std::vector<Round> rounds;
  std::vector<int> modification_count;  // indexed by pair_index
};

struct RepairResult {
  DistanceMatrix output;
  double cost = 0.0;
  std::vector<PairChange> modified_pairs;
  std::optional<PivotTrace> trace;
};

// Fills cost and modified_pairs of a result whose output is `y`.
RepairResult make_repair_result(const WeightedInstance& x, DistanceMatrix y,
                                double eq_tol = 0.0);

}  // namespace mvd

#endif  // MVDLIB_CORE_H_
