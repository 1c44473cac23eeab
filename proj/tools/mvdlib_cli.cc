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

// mvdlib command-line front end.
//
// Exit codes: 0 success, 1 usage or input error, 2 an algorithm produced an
// output that fails its own validity check.

#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "mvdlib/bench.h"
#include "mvdlib/core.h"
#include "mvdlib/corrclust.h"
#include "mvdlib/instances.h"
#include "mvdlib/io.h"
#include "mvdlib/lp_round.h"
#include "mvdlib/oracle.h"

namespace {

constexpr int kExitInvalidOutput = 2;

struct GlobalFlags {
  std::uint64_t seed = 0;
  double eq_tol = 0.0;
  int threads = 1;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    mvd::write_file(path, text);
  }
}

std::string describe_violations(const std::vector<mvd::Triangle>& v) {
  std::ostringstream out;
  out << v.size();
  if (!v.empty()) {
    const mvd::Triangle& t = v.front();
    out << " (first: triangle " << t.i << " " << t.j << " " << t.k << ", edge "
        << t.edge.i << " " << t.edge.j << ")";
  }
  return out.str();
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  std::string input;
  std::string mode = "both";
};

int run_validate(const ValidateArgs& a, const GlobalFlags& g) {
  const mvd::WeightedInstance inst = mvd::read_instance(a.input);
  const auto& x = inst.distances();
  std::cout << "n " << inst.size() << "\n";
  bool ok = true;
  if (a.mode != "ultra") {
    const auto v = mvd::metric_violations(x, g.eq_tol);
    std::cout << "metric " << (v.empty() ? "yes" : "no") << "\n"
              << "metric_violations " << describe_violations(v) << "\n";
    ok = ok && v.empty();
  }
  if (a.mode != "metric") {
    const auto v = mvd::ultrametric_violations(x, g.eq_tol);
    std::cout << "ultrametric " << (v.empty() ? "yes" : "no") << "\n"
              << "ultrametric_violations " << describe_violations(v) << "\n";
    ok = ok && v.empty();
  }
  return a.mode == "both" || ok ? 0 : 1;
}

// ------------------------------------------------------------------ repair

struct RepairArgs {
  std::string input;
  std::string algo = "pivot-metric";
  std::string pivots_file;
  std::string trace_file;
  std::string eps = "0.019";
  double k0 = 3.0;
  std::string solver = "builtin";
  std::string solver_cmd;
  bool force = false;
  std::string output;
};

int run_repair(const RepairArgs& a, const GlobalFlags& g) {
  const mvd::WeightedInstance inst = mvd::read_instance(a.input);
  const mvd::Algo algo = mvd::parse_algo(a.algo);
  mvd::AlgoOptions options;
  options.eq_tol = g.eq_tol;
  options.cc.eps = mvd::Ratio::Parse(a.eps);
  options.k0 = a.k0;
  options.record_trace = !a.trace_file.empty();
  if (!a.pivots_file.empty()) {
    options.pivots =
        mvd::parse_index_list(mvd::read_file(a.pivots_file), a.pivots_file);
  }
  std::unique_ptr<mvd::LpSolver> solver;
  if (a.solver == "builtin") {
    solver = std::make_unique<mvd::BuiltinLpSolver>(a.force);
  } else if (a.solver == "external-cmd") {
    if (a.solver_cmd.empty()) {
      throw mvd::Error("--solver external-cmd needs --solver-cmd");
    }
    solver = std::make_unique<mvd::ExternalLpSolver>(a.solver_cmd);
  } else {
    throw mvd::Error("unknown solver '" + a.solver + "'");
  }
  options.solver = solver.get();
  if (options.record_trace && algo != mvd::Algo::kPivotMetric &&
      algo != mvd::Algo::kPivotUltra) {
    throw mvd::Error("--trace is only available for pivot algorithms");
  }

  const mvd::RepairResult r = mvd::run_algorithm(algo, inst, g.seed, options);
  if (r.trace) mvd::write_file(a.trace_file, mvd::format_trace_jsonl(*r.trace));

  const bool valid = mvd::output_valid(algo, r.output);
  std::ostream& log = a.output.empty() ? std::cerr : std::cout;
  log << "algo " << a.algo << "\n"
      << "cost " << mvd::format_number(r.cost) << "\n"
      << "modified_pairs " << r.modified_pairs.size() << "\n"
      << "valid " << (valid ? "yes" : "no") << "\n";
  emit(a.output, mvd::format_instance(mvd::WeightedInstance(
                     r.output, inst.weights())));
  if (!valid) {
    std::cerr << "error: " << a.algo << " produced an invalid output\n";
    return kExitInvalidOutput;
  }
  return 0;
}

// ------------------------------------------------------------------ oracle

struct OracleArgs {
  std::string input;
  std::string mode = "metric";
};

int run_oracle(const OracleArgs& a, const GlobalFlags&) {
  const mvd::WeightedInstance inst = mvd::read_instance(a.input);
  if (!inst.unit_weights()) {
    throw mvd::Error("the exact oracle handles unit weights only");
  }
  mvd::OracleResult r;
  if (a.mode == "metric") {
    r = mvd::exact_mvd(inst.distances());
  } else if (a.mode == "ultra") {
    r = mvd::exact_umvd(inst.distances());
  } else {
    throw mvd::Error("unknown oracle mode '" + a.mode + "'");
  }
  std::cout << "cost " << r.cost << "\nS";
  for (const mvd::Pair& p : r.hitting_set) {
    std::cout << " " << p.i << "-" << p.j;
  }
  std::cout << "\n" << mvd::format_instance(r.witness);
  return 0;
}

// --------------------------------------------------------------------- gen

struct GenArgs {
  int m = 4;
  int d = 3;
  int n = 10;
  int levels = 3;
  double flip = 0.1;
  std::vector<int> sizes;
  std::string output;
  std::string truth;
};

int run_gen(const std::string& kind, const GenArgs& a, const GlobalFlags& g) {
  if (kind == "star") {
    emit(a.output, mvd::format_instance(mvd::gen_star(a.m)));
  } else if (kind == "hypercube") {
    emit(a.output, mvd::format_instance(mvd::gen_hypercube(a.d)));
    if (!a.truth.empty()) {
      mvd::write_file(a.truth, mvd::format_instance(mvd::hypercube_base(a.d)));
    }
  } else if (kind == "random-ultra" || kind == "random-metric") {
    const mvd::NoisyInstance inst =
        kind == "random-ultra"
            ? mvd::gen_random_ultra_noise(a.n, a.levels, a.flip, g.seed)
            : mvd::gen_random_metric_noise(a.n, a.flip, g.seed);
    emit(a.output, mvd::format_instance(inst.noised));
    if (!a.truth.empty()) {
      mvd::write_file(a.truth, mvd::format_instance(inst.clean));
    }
  } else if (kind == "planted-cc") {
    const mvd::PlantedGraph pg = mvd::gen_planted_cc(a.sizes, a.flip, g.seed);
    emit(a.output, mvd::format_signed_graph(pg.graph));
    if (!a.truth.empty()) {
      std::string text;
      for (const auto& c : pg.planted.clusters) {
        for (std::size_t k = 0; k < c.size(); ++k) {
          text += (k ? " " : "") + std::to_string(c[k]);
        }
        text += "\n";
      }
      mvd::write_file(a.truth, text);
    }
  }
  return 0;
}

// ---------------------------------------------------------------------- cc

struct CcArgs {
  std::string input;
  std::string eps = "0.019";
  std::string order = "natural";
};

int run_cc(const CcArgs& a, const GlobalFlags&) {
  const mvd::SignedGraph graph = mvd::read_signed_graph(a.input);
  mvd::AgreementParams params;
  params.eps = mvd::Ratio::Parse(a.eps);
  std::vector<int> order;
  if (a.order != "natural") {
    order = mvd::parse_index_list(mvd::read_file(a.order), a.order);
  }
  const mvd::Clustering c = mvd::agreement_cluster(graph, params, order);
  std::cout << "clusters " << c.clusters.size() << "\n"
            << "cost " << mvd::cc_cost(graph, c) << "\n";
  for (const auto& cluster : c.clusters) {
    for (std::size_t k = 0; k < cluster.size(); ++k) {
      std::cout << (k ? " " : "") << cluster[k];
    }
    std::cout << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
  std::vector<std::string> algos;
  std::string generator;
  int seeds = 100;
  int oracle_limit = 7;
  std::string eps = "0.019";
  double k0 = 3.0;
  std::string json;
  bool timing = false;
  std::string output;
};

int run_bench(const BenchArgs& a, const GlobalFlags& g) {
  mvd::BenchConfig config;
  for (const std::string& name : a.algos) {
    if (name == "all-ultra") {
      for (auto algo : {mvd::Algo::kPivotUltra, mvd::Algo::kCcUltra,
                        mvd::Algo::kLpUltra}) {
        config.algos.push_back(algo);
      }
    } else {
      config.algos.push_back(mvd::parse_algo(name));
    }
  }
  config.generator = mvd::GeneratorSpec::Parse(a.generator);
  for (int s = 0; s < a.seeds; ++s) config.seeds.push_back(g.seed + s);
  config.oracle_limit = a.oracle_limit;
  config.threads = g.threads;
  config.options.eq_tol = g.eq_tol;
  config.options.cc.eps = mvd::Ratio::Parse(a.eps);
  config.options.k0 = a.k0;

  const mvd::BenchReport report = mvd::bench_ratio(config);
  emit(a.output, mvd::format_bench_text(report, a.timing));
  if (!a.json.empty()) {
    mvd::write_file(a.json, mvd::format_bench_jsonl(report, a.timing));
  }
  if (report.invalid() > 0) {
    std::cerr << "error: " << report.invalid()
              << " benchmark rows failed output validation\n";
    return kExitInvalidOutput;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric and ultrametric violation distance repair"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags global;
  app.add_option("--seed", global.seed, "Random seed (default 0)");
  app.add_option("--eq-tol", global.eq_tol,
                 "Equality tolerance for l0 costs and checks")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--threads", global.threads, "Worker threads for bench")
      ->check(CLI::PositiveNumber);

  int status = 0;

  ValidateArgs validate;
  auto* validate_cmd =
      app.add_subcommand("validate", "Check the metric and ultrametric axioms");
  validate_cmd->add_option("input", validate.input, "Instance file")
      ->required();
  validate_cmd->add_option("--mode", validate.mode, "metric, ultra or both")
      ->check(CLI::IsMember({"metric", "ultra", "both"}));
  validate_cmd->callback([&] { status = run_validate(validate, global); });

  RepairArgs repair;
  auto* repair_cmd = app.add_subcommand("repair", "Repair an instance");
  repair_cmd->add_option("input", repair.input, "Instance file")->required();
  repair_cmd->add_option("--algo", repair.algo, "Algorithm")
      ->check(CLI::IsMember(
          {"pivot-metric", "pivot-ultra", "cc-ultra", "lp-ultra"}));
  repair_cmd->add_option("--pivots", repair.pivots_file,
                         "File with an explicit pivot sequence");
  repair_cmd->add_option("--trace", repair.trace_file,
                         "Write the per-round pivot trace as JSON lines");
  repair_cmd->add_option("--eps", repair.eps, "Agreement epsilon (cc-ultra)");
  repair_cmd->add_option("--k0", repair.k0, "Region growth constant (lp-ultra)")
      ->check(CLI::PositiveNumber);
  repair_cmd->add_option("--solver", repair.solver, "builtin or external-cmd")
      ->check(CLI::IsMember({"builtin", "external-cmd"}));
  repair_cmd->add_option("--solver-cmd", repair.solver_cmd,
                         "External LP solver command");
  repair_cmd->add_flag("--force", repair.force,
                       "Lift the builtin LP size limits");
  repair_cmd->add_option("--output,-o", repair.output,
                         "Output instance file (default stdout)");
  repair_cmd->callback([&] { status = run_repair(repair, global); });

  OracleArgs oracle;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "Exact minimum repair for tiny instances");
  oracle_cmd->add_option("input", oracle.input, "Instance file")->required();
  oracle_cmd->add_option("--mode", oracle.mode, "metric or ultra")
      ->check(CLI::IsMember({"metric", "ultra"}));
  oracle_cmd->callback([&] { status = run_oracle(oracle, global); });

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->require_subcommand(1);
  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--output,-o", gen.output, "Output file (default stdout)");
  };
  auto add_truth = [&](CLI::App* cmd) {
    cmd->add_option("--truth", gen.truth, "Write the ground truth here");
  };
  auto* star_cmd = gen_cmd->add_subcommand("star", "Star instance");
  star_cmd->add_option("--m", gen.m, "Number of spokes")->required();
  add_io(star_cmd);
  auto* cube_cmd = gen_cmd->add_subcommand("hypercube", "Noised hypercube");
  cube_cmd->add_option("--d", gen.d, "Depth")->required();
  add_io(cube_cmd);
  add_truth(cube_cmd);
  auto* ultra_cmd =
      gen_cmd->add_subcommand("random-ultra", "Noised random ultrametric");
  ultra_cmd->add_option("--n", gen.n, "Points")->required();
  ultra_cmd->add_option("--levels", gen.levels, "Hierarchy depth");
  ultra_cmd->add_option("--flip", gen.flip, "Fraction of pairs flipped");
  add_io(ultra_cmd);
  add_truth(ultra_cmd);
  auto* metric_cmd =
      gen_cmd->add_subcommand("random-metric", "Noised Euclidean metric");
  metric_cmd->add_option("--n", gen.n, "Points")->required();
  metric_cmd->add_option("--flip", gen.flip, "Fraction of pairs flipped");
  add_io(metric_cmd);
  add_truth(metric_cmd);
  auto* planted_cmd =
      gen_cmd->add_subcommand("planted-cc", "Planted signed graph");
  planted_cmd->add_option("--sizes", gen.sizes, "Group sizes")
      ->required()
      ->delimiter(',');
  planted_cmd->add_option("--flip", gen.flip, "Fraction of pairs flipped");
  add_io(planted_cmd);
  add_truth(planted_cmd);
  for (CLI::App* cmd :
       {star_cmd, cube_cmd, ultra_cmd, metric_cmd, planted_cmd}) {
    cmd->callback([&, cmd] { status = run_gen(cmd->get_name(), gen, global); });
  }

  CcArgs cc;
  auto* cc_cmd = app.add_subcommand("cc", "Agreement correlation clustering");
  cc_cmd->add_option("input", cc.input, "Signed graph file")->required();
  cc_cmd->add_option("--eps", cc.eps, "Agreement epsilon");
  cc_cmd->add_option("--order", cc.order,
                     "natural or a file with a vertex order");
  cc_cmd->callback([&] { status = run_cc(cc, global); });

  BenchArgs bench;
  auto* bench_cmd =
      app.add_subcommand("bench", "Empirical approximation ratios");
  bench_cmd->add_option("--algo", bench.algos,
                        "Algorithms (repeatable; all-ultra for every "
                        "ultrametric algorithm)")
      ->required();
  bench_cmd->add_option("--gen", bench.generator,
                        "Generator, e.g. star:m=128 or "
                        "random-ultra:n=6,levels=3,flip=0.1")
      ->required();
  bench_cmd->add_option("--seeds", bench.seeds,
                        "Number of seeds, starting at --seed")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--oracle-limit", bench.oracle_limit,
                        "Run the exact oracle when n is at most this");
  bench_cmd->add_option("--eps", bench.eps, "Agreement epsilon (cc-ultra)");
  bench_cmd->add_option("--k0", bench.k0, "Region growth constant")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--json", bench.json, "Write JSON lines here");
  bench_cmd->add_flag("--timing", bench.timing, "Include runtimes");
  bench_cmd->add_option("--output,-o", bench.output,
                        "Report file (default stdout)");
  bench_cmd->callback([&] { status = run_bench(bench, global); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return status;
}
