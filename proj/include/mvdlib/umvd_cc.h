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

#ifndef MVDLIB_UMVD_CC_H_
#define MVDLIB_UMVD_CC_H_

#include <vector>

#include "mvdlib/core.h"
#include "mvdlib/corrclust.h"

namespace mvd {

// + for pairs strictly below w_max, - for pairs at w_max.
SignedGraph build_cc_level(const DistanceMatrix& x, double w_max);

// One recursive call of the top-down ultrametric construction.
struct LevelCall {
  int parent = -1;           // index into UmvdCcResult::calls, -1 at the root
  double w_max = 0.0;        // largest working distance of the call
  std::vector<int> points;   // original point ids
  std::vector<std::vector<int>> clusters;  // empty when the call terminated
};

struct UmvdCcResult {
  RepairResult repair;
  std::vector<LevelCall> calls;
};

// Top-down ultrametric repair for unit-weight inputs: peel the largest level
// with agreement correlation clustering, pin cross-cluster pairs to that
// level, cap in-cluster pairs at the next level and recurse per cluster.
// Cost is measured against the original x.
UmvdCcResult umvd_constant(const DistanceMatrix& x,
                           const AgreementParams& params = {},
                           double eq_tol = 0.0);

}  // namespace mvd

#endif  // MVDLIB_UMVD_CC_H_
