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

// Weighted ultrametric repair by LP relaxation and region-growing rounding.
//
// The relaxation has one variable d^t_ij per level t = 1..L and pair {i,j};
// d^t_ij = 1 means "y(i,j) >= w_t". Each level is a pseudometric
// (triangle rows), levels are nested (d^{t+1} <= d^t) and the objective
//
//   sum_ij w(i,j) * (d^{x(i,j)+1}_ij + 1 - d^{x(i,j)}_ij),   d^{L+1} := 0,
//
// charges a pair for being separated above its level or merged at it.
// Rounding walks the levels top-down and cuts LP balls of radius <= 1/3
// whose boundary weight is bounded by K * volume * ln(total / volume).

#ifndef MVDLIB_LP_ROUND_H_
#define MVDLIB_LP_ROUND_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mvdlib/core.h"
#include "mvdlib/simplex.h"

namespace mvd {

class UltrametricLP {
 public:
  explicit UltrametricLP(const WeightedInstance& inst);

  int num_points() const { return n_; }
  const LevelMap& levels() const { return levels_; }
  int num_levels() const { return levels_.num_levels(); }
  const LinearProgram& program() const { return program_; }

  // Column of d^t_{p}, t in [1, L].
  int var_index(int t, Pair p) const;
  std::string var_name(int var) const;  // "d_t_i_j"

  std::size_t num_triangle_rows() const { return triangle_rows_; }
  std::size_t num_monotone_rows() const { return monotone_rows_; }

  // The text LP form ("Minimize / Subject To / Bounds / End"). The objective
  // constant is written as a comment line `\ constant <value>`.
  std::string to_lp_format() const;

 private:
  int n_;
  LevelMap levels_;
  LinearProgram program_;
  std::size_t triangle_rows_ = 0;
  std::size_t monotone_rows_ = 0;
};

UltrametricLP build_lp(const WeightedInstance& inst);

class LPSolution {
 public:
  LPSolution() = default;
  LPSolution(const UltrametricLP& lp, std::vector<double> values);

  int num_points() const { return n_; }
  const LevelMap& levels() const { return levels_; }
  // d^t_ij with d^t_ii = 0 and d^{L+1} = 0.
  double d(int t, int i, int j) const;
  const std::vector<double>& values() const { return values_; }

  double objective() const { return objective_; }
  // Objective divided by the number of points.
  double rho() const { return objective_ / n_; }
  double max_violation() const { return max_violation_; }

 private:
  int n_ = 0;
  LevelMap levels_;
  std::vector<double> values_;
  double objective_ = 0.0;
  double max_violation_ = 0.0;
};

class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual LPSolution solve(const UltrametricLP& lp) const = 0;
};

// The dense bounded simplex. Refuses programs beyond n <= 15 points and
// L <= 5 levels unless `force` is set.
class BuiltinLpSolver : public LpSolver {
 public:
  explicit BuiltinLpSolver(bool force = false) : force_(force) {}
  LPSolution solve(const UltrametricLP& lp) const override;

  static constexpr int kMaxPoints = 15;
  static constexpr int kMaxLevels = 5;

 private:
  bool force_;
};

// Delegates to an external program invoked as `<command> <lp-file>
// <solution-file>`. The solution file holds one `d_t_i_j <value>` per line;
// omitted variables are 0.
class ExternalLpSolver : public LpSolver {
 public:
  explicit ExternalLpSolver(std::string command)
      : command_(std::move(command)) {}
  LPSolution solve(const UltrametricLP& lp) const override;

 private:
  std::string command_;
};

// Reads `d_t_i_j <value>` lines.
std::vector<double> parse_lp_solution(const UltrametricLP& lp,
                                      const std::string& text);

LPSolution solve_lp(const UltrametricLP& lp, const LpSolver& solver);
LPSolution solve_lp(const UltrametricLP& lp);

// Pairs of Z at level t: E_t holds pairs with x(i,j) < w_t, E'_t the rest.
struct RegionQuantities {
  std::vector<int> ball;        // V^t_Z(c, r), ascending
  double volume = 0.0;          // A^t_Z(c, r)
  double boundary_weight = 0.0; // w(delta^t_Z(c, r))
  double total = 0.0;           // A^t_Z
};

RegionQuantities region_quantities(std::span<const int> zone, int t,
                                   int center, double radius,
                                   const LPSolution& sol,
                                   const WeightedInstance& inst);

// K = k0 * (ln ln max(total / rho, e^e) + 1); rho = 0 counts as the floor.
double growth_factor(double total, double rho, double k0);

// K * volume * ln(total / volume) - boundary_weight, with a*ln(A/a) -> 0 as
// a -> 0.
double region_slack(const RegionQuantities& q, double k);

struct RadiusChoice {
  int level = 0;
  int center = 0;
  double radius = 0.0;
  double slack = 0.0;
  double k = 0.0;
  double volume = 0.0;
  double total = 0.0;
  double boundary_weight = 0.0;
  std::size_t zone_size = 0;
};

// Maximizes the slack over r in [0, 1/3]. Between consecutive breakpoints
// (distances d^t_ci) the ball is fixed, the volume is linear in r and the
// slack is concave, so the maximum over each piece is at its left end, at the
// stationary point volume = total/e, or at its open right end (approached
// 1e-9 below the next breakpoint). Ties go to the largest radius. Throws if
// no candidate has nonnegative slack.
RadiusChoice choose_radius(std::span<const int> zone, int t, int center,
                           const LPSolution& sol, const WeightedInstance& inst,
                           double k0 = 3.0);

// Region-growing partition of `zone` at level t. Each removed part is the
// ball chosen for the lexicographically smallest pair in E'_t whose LP
// distance exceeds 2/3; the remainder is the last part.
std::vector<std::vector<int>> cluster_partition(
    std::span<const int> zone, int t, const LPSolution& sol,
    const WeightedInstance& inst, double k0 = 3.0,
    std::vector<RadiusChoice>* radii = nullptr);

struct LpRoundResult {
  RepairResult repair;
  std::vector<RadiusChoice> radii;
};

// Top-down rounding from level L. Cross-part pairs get w_t, same-part pairs
// min(y, w_{t-1}) with w_0 = 0; y starts at w_L.
LpRoundResult hierarchical_cluster(const WeightedInstance& inst,
                                   const LPSolution& sol, double k0 = 3.0,
                                   double eq_tol = 0.0);

struct UmvdLpResult {
  LPSolution lp;
  LpRoundResult rounding;
};

UmvdLpResult umvd_lp(const WeightedInstance& inst, const LpSolver& solver,
                     double k0 = 3.0, double eq_tol = 0.0);

}  // namespace mvd

#endif  // MVDLIB_LP_ROUND_H_
