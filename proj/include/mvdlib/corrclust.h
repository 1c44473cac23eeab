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

// Agreement-based correlation clustering on complete signed graphs.
//
// Neighborhoods are closed: N(u) contains u and its + neighbors. All fraction
// thresholds are compared exactly by integer cross-multiplication, so the
// tolerance is carried as a rational number.

#ifndef MVDLIB_CORRCLUST_H_
#define MVDLIB_CORRCLUST_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "mvdlib/core.h"

namespace mvd {

// Nonnegative rational num/den with den > 0.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  // Accepts "0.019", "3", "1/60".
  static Ratio Parse(std::string_view text);
  double value() const { return static_cast<double>(num) / den; }
};

struct AgreementParams {
  Ratio eps{19, 1000};
  int delta = 14;

  // Throws unless 0 < eps < 1/50 and both constraints
  //   (1/3 - 14 eps) / (1 + 14 eps) > eps / 8,
  //   1 / (1 + (1/3 + 14 eps) / (2/3 - 14 eps)) > eps / 8
  // hold.
  void validate() const;
};

class SignedGraph {
 public:
  explicit SignedGraph(int n);
  static SignedGraph FromPlusEdges(int n, std::span<const Pair> plus_edges);

  int size() const { return n_; }
  void add_plus(int u, int v);
  bool plus(int u, int v) const {
    return plus_[static_cast<std::size_t>(u) * n_ + v] != 0;
  }
  // Sorted open + neighborhood.
  const std::vector<int>& plus_neighbors(int u) const { return adj_[u]; }
  std::size_t num_plus_edges() const;

 private:
  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint8_t> plus_;
};

// A partition of [n]. Clusters keep their members ascending and are listed in
// the order they were produced; for agreement_cluster this is emission order,
// so the residual graph seen by cluster k is [n] minus clusters 0..k-1.
struct Clustering {
  std::vector<std::vector<int>> clusters;

  // Cluster id of every point. Throws if the clusters are not a partition.
  std::vector<int> labels(int n) const;
};

bool agree(int u, int v, const SignedGraph& g, const AgreementParams& p);

// Runs the agreement correlation clustering. `order` lists the vertices in
// the order they are tried as cluster seeds; empty means 0, 1, ..., n-1.
Clustering agreement_cluster(const SignedGraph& g, const AgreementParams& p,
                             std::span<const int> order = {});

// Number of - edges inside clusters plus + edges across clusters.
std::int64_t cc_cost(const SignedGraph& g, const Clustering& c);

// Exhaustive optimum over all set partitions (n <= 10). Ties go to the
// lexicographically smallest restricted-growth encoding.
std::pair<Clustering, std::int64_t> cc_brute_force(const SignedGraph& g);

// Every member keeps at most an eps/8 fraction of N(v) outside the group and
// is + connected (counting itself) to at least (1 - eps/8)|C| members.
bool is_important_group(std::span<const int> group, const SignedGraph& g,
                        const AgreementParams& p);

// Every member is + connected to at least 2|C|/3 members, counting itself as
// in the closed neighborhoods N(v) used by the clustering. Singletons are
// everywhere dense.
bool is_everywhere_dense(std::span<const int> group, const SignedGraph& g);

// Denseness of a non-singleton emitted cluster inside the residual vertex set
// it was carved from: each member sees at least (1 - delta*eps)|S| of S and
// at most delta*eps*|S| residual vertices outside S.
bool satisfies_density_bounds(std::span<const int> cluster,
                              std::span<const int> residual,
                              const SignedGraph& g, const AgreementParams& p);

}  // namespace mvd

#endif  // MVDLIB_CORRCLUST_H_
