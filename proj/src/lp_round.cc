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

#include "mvdlib/lp_round.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

namespace mvd {

UltrametricLP::UltrametricLP(const WeightedInstance& inst)
    : n_(inst.size()), levels_(inst.distances()) {
  const int levels = levels_.num_levels();
  const std::size_t pairs = num_pairs(n_);
  program_.num_vars = static_cast<int>(pairs) * levels;
  program_.objective.assign(program_.num_vars, 0.0);
  program_.lower.assign(program_.num_vars, 0.0);
  program_.upper.assign(program_.num_vars, 1.0);

  for (const Pair& p : all_pairs(n_)) {
    const double w = inst.weight(p.i, p.j);
    const int t = levels_.index(inst.distances().at(p));
    program_.objective_constant += w;
    program_.objective[var_index(t, p)] -= w;
    if (t < levels) program_.objective[var_index(t + 1, p)] += w;
  }

  for (int t = 1; t <= levels; ++t) {
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        for (int k = j + 1; k < n_; ++k) {
          const int ij = var_index(t, {i, j});
          const int ik = var_index(t, {i, k});
          const int jk = var_index(t, {j, k});
          program_.rows.push_back({{{ij, 1.0}, {ik, -1.0}, {jk, -1.0}}, 0.0});
          program_.rows.push_back({{{ik, 1.0}, {ij, -1.0}, {jk, -1.0}}, 0.0});
          program_.rows.push_back({{{jk, 1.0}, {ij, -1.0}, {ik, -1.0}}, 0.0});
          triangle_rows_ += 3;
        }
      }
    }
  }
  for (int t = 1; t < levels; ++t) {
    for (const Pair& p : all_pairs(n_)) {
      program_.rows.push_back(
          {{{var_index(t + 1, p), 1.0}, {var_index(t, p), -1.0}}, 0.0});
      ++monotone_rows_;
    }
  }
}

int UltrametricLP::var_index(int t, Pair p) const {
  return static_cast<int>(static_cast<std::size_t>(t - 1) * num_pairs(n_) +
                          pair_index(n_, p));
}

std::string UltrametricLP::var_name(int var) const {
  const std::size_t pairs = num_pairs(n_);
  const int t = static_cast<int>(var / pairs) + 1;
  const std::size_t idx = var % pairs;
  // Invert pair_index by scanning rows.
  int i = 0;
  std::size_t start = 0;
  while (start + static_cast<std::size_t>(n_ - i - 1) <= idx) {
    start += static_cast<std::size_t>(n_ - i - 1);
    ++i;
  }
  const int j = i + 1 + static_cast<int>(idx - start);
  return "d_" + std::to_string(t) + "_" + std::to_string(i) + "_" +
         std::to_string(j);
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string UltrametricLP::to_lp_format() const {
  std::ostringstream out;
  out << "\\ mvdlib ultrametric relaxation, n=" << n_
      << " levels=" << num_levels() << "\n";
  out << "\\ constant " << format_double(program_.objective_constant) << "\n";
  out << "Minimize\n obj:";
  bool any = false;
  for (int v = 0; v < program_.num_vars; ++v) {
    const double c = program_.objective[v];
    if (c == 0.0) continue;
    out << (c < 0 ? " - " : " + ") << format_double(std::abs(c)) << " "
        << var_name(v);
    any = true;
  }
  if (!any) out << " 0 " << var_name(0);
  out << "\nSubject To\n";
  for (std::size_t r = 0; r < program_.rows.size(); ++r) {
    out << " c" << r << ":";
    for (const auto& [var, coef] : program_.rows[r].terms) {
      out << (coef < 0 ? " - " : " + ") << format_double(std::abs(coef))
          << " " << var_name(var);
    }
    out << " <= " << format_double(program_.rows[r].rhs) << "\n";
  }
  out << "Bounds\n";
  for (int v = 0; v < program_.num_vars; ++v) {
    out << " 0 <= " << var_name(v) << " <= 1\n";
  }
  out << "End\n";
  return out.str();
}

UltrametricLP build_lp(const WeightedInstance& inst) {
  return UltrametricLP(inst);
}

LPSolution::LPSolution(const UltrametricLP& lp, std::vector<double> values)
    : n_(lp.num_points()), levels_(lp.levels()), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != lp.program().num_vars) {
    throw Error("LP solution has the wrong number of values");
  }
  objective_ = lp.program().evaluate(values_);
  max_violation_ = lp.program().max_violation(values_);
}

double LPSolution::d(int t, int i, int j) const {
  if (i == j || t > levels_.num_levels()) return 0.0;
  if (t < 1) throw Error("LP level must be positive");
  const std::size_t idx =
      static_cast<std::size_t>(t - 1) * num_pairs(n_) +
      pair_index(n_, Pair::Of(i, j));
  return values_[idx];
}

LPSolution BuiltinLpSolver::solve(const UltrametricLP& lp) const {
  if (!force_ && (lp.num_points() > kMaxPoints ||
                  lp.num_levels() > kMaxLevels)) {
    throw Error("LP too large for the built-in solver (n=" +
                std::to_string(lp.num_points()) +
                ", L=" + std::to_string(lp.num_levels()) +
                "); limits are n<=15, L<=5, pass force to override");
  }
  SimplexResult r;
  try {
    r = solve_bounded_simplex(lp.program());
  } catch (const Error& e) {
    throw Error(std::string("internal error: LP solve failed: ") + e.what());
  }
  return LPSolution(lp, std::move(r.x));
}

std::vector<double> parse_lp_solution(const UltrametricLP& lp,
                                      const std::string& text) {
  std::vector<double> values(lp.program().num_vars, 0.0);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string name;
    double value;
    if (!(fields >> name) || name[0] == '#') continue;
    if (!(fields >> value)) {
      throw Error("solution line " + std::to_string(line_no) +
                  ": missing value");
    }
    int t, i, j;
    char tail;
    if (std::sscanf(name.c_str(), "d_%d_%d_%d%c", &t, &i, &j, &tail) != 3 ||
        t < 1 || t > lp.num_levels() || i < 0 || j <= i ||
        j >= lp.num_points()) {
      throw Error("solution line " + std::to_string(line_no) +
                  ": unknown variable '" + name + "'");
    }
    values[lp.var_index(t, {i, j})] = value;
  }
  return values;
}

LPSolution ExternalLpSolver::solve(const UltrametricLP& lp) const {
  namespace fs = std::filesystem;
  std::random_device rd;
  const fs::path dir = fs::temp_directory_path() /
                       ("mvdlib-lp-" + std::to_string(rd()) + "-" +
                        std::to_string(rd()));
  fs::create_directories(dir);
  const fs::path lp_path = dir / "problem.lp";
  const fs::path sol_path = dir / "solution.txt";
  {
    std::ofstream out(lp_path);
    out << lp.to_lp_format();
  }
  const std::string cmd =
      command_ + " '" + lp_path.string() + "' '" + sol_path.string() + "'";
  const int status = std::system(cmd.c_str());
  if (status != 0) {
    fs::remove_all(dir);
    throw Error("external LP solver failed with status " +
                std::to_string(status));
  }
  std::ifstream in(sol_path);
  if (!in) {
    fs::remove_all(dir);
    throw Error("external LP solver wrote no solution file");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  fs::remove_all(dir);
  return LPSolution(lp, parse_lp_solution(lp, buffer.str()));
}

LPSolution solve_lp(const UltrametricLP& lp, const LpSolver& solver) {
  return solver.solve(lp);
}

LPSolution solve_lp(const UltrametricLP& lp) {
  return BuiltinLpSolver().solve(lp);
}

namespace {

bool in_e_t(const WeightedInstance& inst, const LevelMap& levels, int t,
            int i, int j) {
  return inst.distances()(i, j) < levels.value(t);
}

}  // namespace

RegionQuantities region_quantities(std::span<const int> zone, int t,
                                   int center, double radius,
                                   const LPSolution& sol,
                                   const WeightedInstance& inst) {
  const LevelMap& levels = sol.levels();
  const double rho = sol.rho();
  RegionQuantities q;
  std::vector<std::uint8_t> inside(static_cast<std::size_t>(inst.size()), 0);
  for (int i : zone) {
    if (sol.d(t, center, i) <= radius) {
      inside[i] = 1;
      q.ball.push_back(i);
    }
  }
  std::sort(q.ball.begin(), q.ball.end());
  q.total = rho * static_cast<double>(zone.size());
  q.volume = rho * static_cast<double>(q.ball.size());
  for (std::size_t a = 0; a < zone.size(); ++a) {
    for (std::size_t b = a + 1; b < zone.size(); ++b) {
      const int i = zone[a];
      const int j = zone[b];
      if (!in_e_t(inst, levels, t, i, j)) continue;
      const double w = inst.weight(i, j);
      const double dij = sol.d(t, i, j);
      q.total += w * dij;
      if (inside[i] && inside[j]) {
        q.volume += w * dij;
      } else if (inside[i] || inside[j]) {
        const int in_end = inside[i] ? i : j;
        q.volume += w * (radius - sol.d(t, center, in_end));
        q.boundary_weight += w;
      }
    }
  }
  return q;
}

double growth_factor(double total, double rho, double k0) {
  const double floor = std::exp(std::numbers::e);
  const double ratio = rho > 0.0 ? std::max(total / rho, floor) : floor;
  return k0 * (std::log(std::log(ratio)) + 1.0);
}

double region_slack(const RegionQuantities& q, double k) {
  double growth = 0.0;
  if (q.volume > 0.0 && q.total > 0.0) {
    growth = k * q.volume * std::log(q.total / q.volume);
  }
  return growth - q.boundary_weight;
}

RadiusChoice choose_radius(std::span<const int> zone, int t, int center,
                           const LPSolution& sol, const WeightedInstance& inst,
                           double k0) {
  constexpr double kMaxRadius = 1.0 / 3.0;
  constexpr double kApproach = 1e-9;

  std::vector<double> breaks{0.0, kMaxRadius};
  for (int i : zone) {
    const double d = sol.d(t, center, i);
    if (d <= kMaxRadius) breaks.push_back(d);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const double total =
      region_quantities(zone, t, center, 0.0, sol, inst).total;
  const double k = growth_factor(total, sol.rho(), k0);

  std::vector<double> candidates;
  for (std::size_t b = 0; b < breaks.size(); ++b) {
    candidates.push_back(breaks[b]);
    if (b + 1 == breaks.size()) break;
    const double lo = breaks[b];
    const double hi = breaks[b + 1];
    candidates.push_back(hi - std::min(kApproach, (hi - lo) / 2));
    const RegionQuantities q =
        region_quantities(zone, t, center, lo, sol, inst);
    if (q.boundary_weight > 0.0) {
      const double r = lo + (total / std::numbers::e - q.volume) /
                                q.boundary_weight;
      if (r > lo && r < hi) candidates.push_back(r);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<std::pair<double, RegionQuantities>> evaluated;
  double best = -std::numeric_limits<double>::infinity();
  for (double r : candidates) {
    RegionQuantities q = region_quantities(zone, t, center, r, sol, inst);
    best = std::max(best, region_slack(q, k));
    evaluated.emplace_back(r, std::move(q));
  }
  if (best < -1e-9) {
    throw Error("region-growing guarantee violated at level " +
                std::to_string(t) + ", center " + std::to_string(center));
  }
  RadiusChoice choice;
  for (const auto& [r, q] : evaluated) {
    const double s = region_slack(q, k);
    if (s >= best - 1e-12) {
      choice = {t, center, r, s, k, q.volume, q.total, q.boundary_weight,
                zone.size()};
    }
  }
  return choice;
}

std::vector<std::vector<int>> cluster_partition(
    std::span<const int> zone, int t, const LPSolution& sol,
    const WeightedInstance& inst, double k0,
    std::vector<RadiusChoice>* radii) {
  const LevelMap& levels = sol.levels();
  std::vector<int> rest(zone.begin(), zone.end());
  std::sort(rest.begin(), rest.end());
  std::vector<std::vector<int>> parts;
  for (;;) {
    int far_i = -1;
    int far_j = -1;
    for (std::size_t a = 0; a < rest.size() && far_i < 0; ++a) {
      for (std::size_t b = a + 1; b < rest.size(); ++b) {
        const int i = rest[a];
        const int j = rest[b];
        if (!in_e_t(inst, levels, t, i, j) && sol.d(t, i, j) > 2.0 / 3.0) {
          far_i = i;
          far_j = j;
          break;
        }
      }
    }
    if (far_i < 0) {
      if (!rest.empty()) parts.push_back(std::move(rest));
      return parts;
    }
    const RegionQuantities around_i =
        region_quantities(rest, t, far_i, 1.0 / 3.0, sol, inst);
    const int center =
        around_i.volume <= around_i.total / 2 ? far_i : far_j;
    const RadiusChoice choice = choose_radius(rest, t, center, sol, inst, k0);
    if (radii != nullptr) radii->push_back(choice);
    std::vector<int> ball =
        region_quantities(rest, t, center, choice.radius, sol, inst).ball;
    std::vector<int> remaining;
    std::set_difference(rest.begin(), rest.end(), ball.begin(), ball.end(),
                        std::back_inserter(remaining));
    parts.push_back(std::move(ball));
    rest = std::move(remaining);
  }
}

LpRoundResult hierarchical_cluster(const WeightedInstance& inst,
                                   const LPSolution& sol, double k0,
                                   double eq_tol) {
  const int n = inst.size();
  if (sol.num_points() != n) throw Error("LP solution has wrong size");
  const LevelMap& levels = sol.levels();
  const int top = levels.num_levels();
  DistanceMatrix y(n, levels.value(top));
  LpRoundResult result;

  struct Task {
    std::vector<int> zone;
    int t;
  };
  std::vector<Task> stack;
  {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[i] = i;
    stack.push_back({std::move(all), top});
  }
  while (!stack.empty()) {
    Task task = std::move(stack.back());
    stack.pop_back();
    if (task.t == 0 || task.zone.size() < 2) continue;
    auto parts =
        cluster_partition(task.zone, task.t, sol, inst, k0, &result.radii);
    const double below = levels.value(task.t - 1);
    const double here = levels.value(task.t);
    for (std::size_t a = 0; a < parts.size(); ++a) {
      for (std::size_t i = 0; i < parts[a].size(); ++i) {
        for (std::size_t j = i + 1; j < parts[a].size(); ++j) {
          const int u = parts[a][i];
          const int v = parts[a][j];
          y.assign(u, v, std::min(y(u, v), below));
        }
        for (std::size_t b = a + 1; b < parts.size(); ++b) {
          for (int v : parts[b]) y.assign(parts[a][i], v, here);
        }
      }
    }
    for (auto& part : parts) stack.push_back({std::move(part), task.t - 1});
  }
  result.repair = make_repair_result(inst, std::move(y), eq_tol);
  return result;
}

UmvdLpResult umvd_lp(const WeightedInstance& inst, const LpSolver& solver,
                     double k0, double eq_tol) {
  const UltrametricLP lp = build_lp(inst);
  UmvdLpResult result;
  result.lp = solver.solve(lp);
  result.rounding = hierarchical_cluster(inst, result.lp, k0, eq_tol);
  return result;
}

}  // namespace mvd
