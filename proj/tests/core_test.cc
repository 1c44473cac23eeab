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

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <tuple>

#include "gtest/gtest.h"
#include "mvdlib/instances.h"
#include "test_util.h"

namespace mvd {
namespace {

using ::mvd::testing::naive_bad_triples;
using ::mvd::testing::naive_is_metric;
using ::mvd::testing::naive_is_ultrametric;
using ::mvd::testing::random_matrix;

DistanceMatrix triangle(double x01, double x02, double x12) {
  DistanceMatrix x(3);
  x.set(0, 1, x01);
  x.set(0, 2, x02);
  x.set(1, 2, x12);
  return x;
}

TEST(PairTest, IndexEnumeratesRowMajor) {
  const int n = 5;
  const auto pairs = all_pairs(n);
  ASSERT_EQ(pairs.size(), num_pairs(n));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    EXPECT_EQ(pair_index(n, pairs[k]), k);
    EXPECT_LT(pairs[k].i, pairs[k].j);
  }
  EXPECT_EQ(pairs.front(), (Pair{0, 1}));
  EXPECT_EQ(pairs.back(), (Pair{3, 4}));
  EXPECT_EQ(Pair::Of(4, 2), (Pair{2, 4}));
}

TEST(DistanceMatrixTest, SymmetricAndValidated) {
  DistanceMatrix x(3);
  x.set(2, 0, 1.5);
  EXPECT_EQ(x(0, 2), 1.5);
  EXPECT_EQ(x(2, 0), 1.5);
  EXPECT_EQ(x(1, 1), 0.0);
  EXPECT_THROW(x.set(1, 1, 1.0), Error);
  EXPECT_THROW(x.set(0, 3, 1.0), Error);
  EXPECT_THROW(x.set(0, 1, -1.0), Error);
  EXPECT_THROW(x.set(0, 1, std::numeric_limits<double>::infinity()), Error);
  EXPECT_THROW(x.set(0, 1, std::nan("")), Error);
}

TEST(DistanceMatrixTest, PackedRoundTripAndRestriction) {
  const std::vector<double> packed = {1, 2, 3, 4, 5, 6};
  const DistanceMatrix x = DistanceMatrix::FromPacked(4, packed);
  EXPECT_EQ(x.packed(), packed);
  EXPECT_EQ(x(2, 3), 6);
  const std::vector<int> pts = {3, 1};
  const DistanceMatrix sub = x.restricted(pts);
  EXPECT_EQ(sub.size(), 2);
  EXPECT_EQ(sub(0, 1), x(1, 3));
  EXPECT_EQ(x.max_value(), 6);
}

TEST(MetricViolationsTest, Equilateral) {
  EXPECT_TRUE(metric_violations(triangle(1, 1, 1)).empty());
}

TEST(MetricViolationsTest, ExcessEdge) {
  // x(1,2)=3, x(1,3)=1, x(2,3)=1 in 1-based labels.
  const auto v = metric_violations(triangle(3, 1, 1));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].edge, (Pair{0, 1}));
  EXPECT_EQ(v[0].kind, ViolationKind::kExcess);
}

TEST(MetricViolationsTest, LongEdgeReportedAsExcess) {
  // x(1,2)=0.5, x(1,3)=1, x(2,3)=3.
  const auto v = metric_violations(triangle(0.5, 1, 3));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].edge, (Pair{1, 2}));
}

TEST(UltrametricViolationsTest, Examples) {
  EXPECT_TRUE(ultrametric_violations(triangle(2, 2, 2)).empty());
  EXPECT_TRUE(ultrametric_violations(triangle(5, 5, 3)).empty());
  const auto v = ultrametric_violations(triangle(5, 4, 3));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].edge, (Pair{0, 1}));
}

TEST(ViolationsTest, AgreeWithTripleLoopOnRandomMatrices) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 8;
    const DistanceMatrix x = random_matrix(n, 0, 6, rng);
    EXPECT_EQ(metric_violations(x).empty(), naive_is_metric(x));
    EXPECT_EQ(is_metric(x), naive_is_metric(x));
    EXPECT_EQ(ultrametric_violations(x).empty(), naive_is_ultrametric(x));
    EXPECT_EQ(is_ultrametric(x), naive_is_ultrametric(x));

    std::set<std::tuple<int, int, int>> got;
    for (const Triangle& t : metric_violations(x)) got.insert({t.i, t.j, t.k});
    EXPECT_EQ(got, naive_bad_triples(x, false));
    got.clear();
    for (const Triangle& t : ultrametric_violations(x)) {
      got.insert({t.i, t.j, t.k});
    }
    EXPECT_EQ(got, naive_bad_triples(x, true));
  }
}

TEST(ViolationsTest, ReportedEdgeIsTheOffendingOne) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const DistanceMatrix x = random_matrix(7, 0, 9, rng);
    for (const Triangle& t : metric_violations(x)) {
      const int third = t.i + t.j + t.k - t.edge.i - t.edge.j;
      EXPECT_GT(x.at(t.edge), x(t.edge.i, third) + x(t.edge.j, third));
    }
    for (const Triangle& t : ultrametric_violations(x)) {
      const int third = t.i + t.j + t.k - t.edge.i - t.edge.j;
      EXPECT_GT(x.at(t.edge),
                std::max(x(t.edge.i, third), x(t.edge.j, third)));
    }
  }
}

TEST(ViolationsTest, UltrametricImpliesMetric) {
  std::mt19937_64 rng(3);
  int ultra_seen = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const DistanceMatrix x = random_matrix(4, 1, 3, rng);
    if (is_ultrametric(x)) {
      ++ultra_seen;
      EXPECT_TRUE(is_metric(x));
    }
  }
  EXPECT_GT(ultra_seen, 10);
}

TEST(ViolationsTest, ToleranceForgivesSmallExcess) {
  const DistanceMatrix x = triangle(2.0 + 1e-12, 1, 1);
  EXPECT_FALSE(is_metric(x));
  EXPECT_TRUE(is_metric(x, 1e-9));
}

TEST(L0CostTest, Examples) {
  const DistanceMatrix x = triangle(1, 2, 3);
  EXPECT_EQ(l0_cost(x, x), 0);
  EXPECT_EQ(l0_cost(x, triangle(1, 2, 4)), 1);

  DistanceMatrix w(3);
  w.set(0, 1, 2);
  w.set(0, 2, 3);
  w.set(1, 2, 5);
  const WeightedInstance inst(x, w);
  EXPECT_EQ(l0_cost(inst, triangle(1, 7, 8)), 8);
}

TEST(L0CostTest, ToleranceAndMismatch) {
  const DistanceMatrix x = triangle(1, 2, 3);
  EXPECT_EQ(l0_cost(x, triangle(1 + 1e-12, 2, 3)), 1);
  EXPECT_EQ(l0_cost(x, triangle(1 + 1e-12, 2, 3), 1e-9), 0);
  EXPECT_THROW(l0_cost(x, DistanceMatrix(4)), Error);
}

TEST(L0CostTest, SymmetricIndicator) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const DistanceMatrix x = random_matrix(6, 0, 3, rng);
    const DistanceMatrix y = random_matrix(6, 0, 3, rng);
    const DistanceMatrix w = random_matrix(6, 0, 4, rng);
    EXPECT_EQ(l0_cost(WeightedInstance(x, w), y),
              l0_cost(WeightedInstance(y, w), x));
  }
}

TEST(LevelMapTest, Examples) {
  const LevelMap single = build_level_map(triangle(1, 1, 1));
  EXPECT_EQ(single.num_levels(), 1);
  EXPECT_EQ(single.value(1), 1);

  DistanceMatrix x(4);
  x.set(0, 1, 3);
  x.set(0, 2, 1);
  x.set(0, 3, 2);
  x.set(1, 2, 1);
  x.set(1, 3, 2);
  x.set(2, 3, 3);
  const LevelMap levels = build_level_map(x);
  EXPECT_EQ(levels.levels(), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(levels.index(2), 2);
  EXPECT_EQ(levels.value(0), 0);
  EXPECT_THROW(levels.index(2.5), Error);
}

TEST(LevelMapTest, HypercubeLevels) {
  // Sibling leaves differ in exactly one bit, so the noise lifts every pair at
  // tree distance 1 to the sentinel 4.
  const LevelMap levels = build_level_map(gen_hypercube(3));
  EXPECT_EQ(levels.levels(), (std::vector<double>{2, 3, 4}));
  EXPECT_EQ(build_level_map(hypercube_base(3)).levels(),
            (std::vector<double>{1, 2, 3}));
}

TEST(RepairResultTest, ListsExactlyTheChangedPairs) {
  const DistanceMatrix x = triangle(1, 2, 3);
  const RepairResult r = make_repair_result(WeightedInstance(x),
                                            triangle(1, 5, 6));
  EXPECT_EQ(r.cost, 2);
  ASSERT_EQ(r.modified_pairs.size(), 2u);
  EXPECT_EQ(r.modified_pairs[0], (PairChange{{0, 2}, 2, 5}));
  EXPECT_EQ(r.modified_pairs[1], (PairChange{{1, 2}, 3, 6}));
}

}  // namespace
}  // namespace mvd
