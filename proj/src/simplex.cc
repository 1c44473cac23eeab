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

#include "mvdlib/simplex.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mvdlib/core.h"

namespace mvd {

double LinearProgram::evaluate(const std::vector<double>& x) const {
  double v = objective_constant;
  for (int k = 0; k < num_vars; ++k) v += objective[k] * x[k];
  return v;
}

double LinearProgram::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int k = 0; k < num_vars; ++k) {
    worst = std::max({worst, lower[k] - x[k], x[k] - upper[k]});
  }
  for (const Row& row : rows) {
    double lhs = 0.0;
    for (const auto& [var, coef] : row.terms) lhs += coef * x[var];
    worst = std::max(worst, lhs - row.rhs);
  }
  return worst;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dictionary form: basic[r] = value - sum_j tableau[r][j] * (nonbasic_j
// displacement). Only the coefficients are stored; values are tracked
// explicitly because nonbasic variables may rest at either bound.
class BoundedSimplex {
 public:
  BoundedSimplex(const LinearProgram& lp, const SimplexOptions& options)
      : options_(options),
        n_(lp.num_vars),
        m_(static_cast<int>(lp.rows.size())),
        tableau_(static_cast<std::size_t>(m_) * n_, 0.0),
        reduced_(lp.objective),
        nonbasic_(n_),
        basic_(m_),
        lower_(n_ + m_),
        upper_(n_ + m_),
        value_(n_ + m_),
        at_upper_(n_ + m_, false) {
    for (int k = 0; k < n_; ++k) {
      if (!(lp.lower[k] <= lp.upper[k]) || !std::isfinite(lp.lower[k])) {
        throw Error("variable " + std::to_string(k) + " has invalid bounds");
      }
      lower_[k] = lp.lower[k];
      upper_[k] = lp.upper[k];
      value_[k] = lower_[k];
      nonbasic_[k] = k;
    }
    for (int r = 0; r < m_; ++r) {
      double activity = 0.0;
      for (const auto& [var, coef] : lp.rows[r].terms) {
        tableau_[static_cast<std::size_t>(r) * n_ + var] += coef;
        activity += coef * lower_[var];
      }
      const int slack = n_ + r;
      basic_[r] = slack;
      lower_[slack] = 0.0;
      upper_[slack] = kInf;
      value_[slack] = lp.rows[r].rhs - activity;
      if (value_[slack] < -options_.tolerance) {
        throw Error("simplex start point violates row " + std::to_string(r));
      }
    }
  }

  std::int64_t run() {
    std::int64_t iterations = 0;
    for (;;) {
      const int col = entering_column();
      if (col < 0) return iterations;
      if (++iterations > options_.max_iterations) {
        throw Error("simplex iteration limit reached");
      }
      step(col);
    }
  }

  std::vector<double> solution() const {
    return {value_.begin(), value_.begin() + n_};
  }

 private:
  double& cell(int r, int c) {
    return tableau_[static_cast<std::size_t>(r) * n_ + c];
  }

  // Bland: the eligible nonbasic variable with the smallest index.
  int entering_column() const {
    int best_col = -1;
    int best_var = n_ + m_;
    for (int c = 0; c < n_; ++c) {
      const int var = nonbasic_[c];
      const double d = reduced_[c];
      const bool improves =
          at_upper_[var] ? d > options_.tolerance : d < -options_.tolerance;
      if (improves && var < best_var && (at_upper_[var] || upper_[var] > lower_[var])) {
        best_var = var;
        best_col = c;
      }
    }
    return best_col;
  }

  void step(int col) {
    const int entering = nonbasic_[col];
    const double dir = at_upper_[entering] ? -1.0 : 1.0;

    double theta = upper_[entering] - lower_[entering];
    int leave_row = -1;  // -1: the entering variable flips bounds
    int leave_var = entering;
    bool leave_to_upper = false;
    for (int r = 0; r < m_; ++r) {
      const double rate = -cell(r, col) * dir;  // d(basic)/d(theta)
      if (std::abs(rate) <= options_.tolerance) continue;
      const int var = basic_[r];
      double limit;
      bool to_upper;
      if (rate < 0) {
        limit = (value_[var] - lower_[var]) / -rate;
        to_upper = false;
      } else {
        if (upper_[var] == kInf) continue;
        limit = (upper_[var] - value_[var]) / rate;
        to_upper = true;
      }
      limit = std::max(limit, 0.0);
      if (limit < theta - 1e-12 ||
          (limit <= theta + 1e-12 && var < leave_var)) {
        theta = limit;
        leave_row = r;
        leave_var = var;
        leave_to_upper = to_upper;
      }
    }
    if (theta == kInf) throw Error("linear program is unbounded");

    value_[entering] += dir * theta;
    for (int r = 0; r < m_; ++r) {
      const double a = cell(r, col);
      if (a != 0.0) value_[basic_[r]] -= a * dir * theta;
    }
    if (leave_row < 0) {
      at_upper_[entering] = !at_upper_[entering];
      value_[entering] = at_upper_[entering] ? upper_[entering]
                                             : lower_[entering];
      return;
    }
    value_[leave_var] = leave_to_upper ? upper_[leave_var] : lower_[leave_var];
    at_upper_[leave_var] = leave_to_upper;
    at_upper_[entering] = false;
    pivot(leave_row, col);
    basic_[leave_row] = entering;
    nonbasic_[col] = leave_var;
  }

  void pivot(int row, int col) {
    const double p = cell(row, col);
    double* pivot_row = &tableau_[static_cast<std::size_t>(row) * n_];
    for (int c = 0; c < n_; ++c) pivot_row[c] /= p;
    pivot_row[col] = 1.0 / p;
    for (int r = 0; r < m_; ++r) {
      if (r == row) continue;
      double* target = &tableau_[static_cast<std::size_t>(r) * n_];
      const double f = target[col];
      if (f == 0.0) continue;
      for (int c = 0; c < n_; ++c) target[c] -= f * pivot_row[c];
      target[col] = -f * pivot_row[col];
    }
    const double f = reduced_[col];
    if (f != 0.0) {
      for (int c = 0; c < n_; ++c) reduced_[c] -= f * pivot_row[c];
      reduced_[col] = -f * pivot_row[col];
    }
  }

  SimplexOptions options_;
  int n_;
  int m_;
  std::vector<double> tableau_;
  std::vector<double> reduced_;
  std::vector<int> nonbasic_;
  std::vector<int> basic_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> value_;
  std::vector<bool> at_upper_;
};

}  // namespace

SimplexResult solve_bounded_simplex(const LinearProgram& lp,
                                    const SimplexOptions& options) {
  if (static_cast<int>(lp.objective.size()) != lp.num_vars ||
      static_cast<int>(lp.lower.size()) != lp.num_vars ||
      static_cast<int>(lp.upper.size()) != lp.num_vars) {
    throw Error("linear program vectors do not match num_vars");
  }
  BoundedSimplex simplex(lp, options);
  SimplexResult result;
  result.iterations = simplex.run();
  result.x = simplex.solution();
  for (int k = 0; k < lp.num_vars; ++k) {
    result.x[k] = std::clamp(result.x[k], lp.lower[k], lp.upper[k]);
  }
  result.objective = lp.evaluate(result.x);
  return result;
}

}  // namespace mvd
