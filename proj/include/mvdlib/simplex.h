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

// Dense primal simplex for small linear programs
//
//   minimize    c.x + c0
//   subject to  A x <= b,   lower <= x <= upper
//
// Nonbasic variables sit at one of their bounds; each row gets a slack
// s = b - A x in [0, inf). Entering and leaving variables follow Bland's rule
// (smallest variable index), which rules out cycling on the highly
// degenerate programs produced by triangle constraints.

#ifndef MVDLIB_SIMPLEX_H_
#define MVDLIB_SIMPLEX_H_

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace mvd {

struct LinearProgram {
  struct Row {
    std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
    double rhs = 0.0;
  };

  int num_vars = 0;
  std::vector<double> objective;
  double objective_constant = 0.0;
  std::vector<double> lower;
  std::vector<double> upper;  // may be +infinity
  std::vector<Row> rows;

  double evaluate(const std::vector<double>& x) const;
  // Largest violation of any row or bound at x (0 when feasible).
  double max_violation(const std::vector<double>& x) const;
};

struct SimplexOptions {
  double tolerance = 1e-9;
  std::int64_t max_iterations = 5'000'000;
};

struct SimplexResult {
  std::vector<double> x;
  double objective = 0.0;
  std::int64_t iterations = 0;
};

// Solves a program whose all-lower-bounds point is feasible (no phase one).
// Throws mvd::Error when that point is infeasible, the program is unbounded
// or the iteration limit is hit.
SimplexResult solve_bounded_simplex(const LinearProgram& lp,
                                    const SimplexOptions& options = {});

}  // namespace mvd

#endif  // MVDLIB_SIMPLEX_H_
