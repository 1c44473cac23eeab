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

#include "mvdlib/umvd_cc.h"

#include <algorithm>
#include <utility>

namespace mvd {

SignedGraph build_cc_level(const DistanceMatrix& x, double w_max) {
  const int n = x.size();
  SignedGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (x(u, v) > w_max) throw Error("w_max is not the maximum entry");
      if (x(u, v) < w_max) g.add_plus(u, v);
    }
  }
  return g;
}

UmvdCcResult umvd_constant(const DistanceMatrix& x,
                           const AgreementParams& params, double eq_tol) {
  params.validate();
  const int n = x.size();
  DistanceMatrix work = x;
  UmvdCcResult result;

  struct Pending {
    std::vector<int> points;
    int parent;
  };
  std::vector<Pending> stack;
  {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[i] = i;
    stack.push_back({std::move(all), -1});
  }
  while (!stack.empty()) {
    Pending call = std::move(stack.back());
    stack.pop_back();
    const auto& pts = call.points;
    if (pts.size() < 2) continue;

    double w_max = 0.0;
    double w_below = -1.0;  // largest value strictly below w_max, if any
    {
      std::vector<double> values;
      for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
          values.push_back(work(pts[a], pts[b]));
        }
      }
      std::sort(values.begin(), values.end());
      w_max = values.back();
      auto it = std::lower_bound(values.begin(), values.end(), w_max);
      if (it != values.begin()) w_below = *(it - 1);
    }
    const int index = static_cast<int>(result.calls.size());
    result.calls.push_back({call.parent, w_max, pts, {}});
    // A single distinct value is already an ultrametric.
    if (w_below < 0.0) continue;

    const DistanceMatrix sub = work.restricted(pts);
    const Clustering local =
        agreement_cluster(build_cc_level(sub, w_max), params);
    std::vector<int> label(pts.size());
    for (std::size_t c = 0; c < local.clusters.size(); ++c) {
      for (int v : local.clusters[c]) label[v] = static_cast<int>(c);
    }
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        const int u = pts[a];
        const int v = pts[b];
        if (label[a] != label[b]) {
          work.assign(u, v, w_max);
        } else {
          work.assign(u, v, std::min(work(u, v), w_below));
        }
      }
    }
    auto& clusters = result.calls[index].clusters;
    for (const auto& members : local.clusters) {
      std::vector<int> global;
      global.reserve(members.size());
      for (int v : members) global.push_back(pts[v]);
      clusters.push_back(global);
      if (global.size() > 1) stack.push_back({std::move(global), index});
    }
  }
  result.repair = make_repair_result(WeightedInstance(x), std::move(work),
                                     eq_tol);
  return result;
}

}  // namespace mvd
