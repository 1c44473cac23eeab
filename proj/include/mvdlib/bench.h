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

// Algorithm dispatch and the approximation-ratio benchmark harness.

#ifndef MVDLIB_BENCH_H_
#define MVDLIB_BENCH_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvdlib/core.h"
#include "mvdlib/corrclust.h"
#include "mvdlib/lp_round.h"

namespace mvd {

enum class Algo { kPivotMetric, kPivotUltra, kCcUltra, kLpUltra };

// "pivot-metric", "pivot-ultra", "cc-ultra", "lp-ultra".
Algo parse_algo(std::string_view name);
std::string_view algo_name(Algo algo);
bool targets_metric(Algo algo);

struct AlgoOptions {
  double eq_tol = 0.0;
  AgreementParams cc;
  double k0 = 3.0;
  const LpSolver* solver = nullptr;  // builtin when null
  bool record_trace = false;
  std::optional<std::vector<int>> pivots;  // explicit sequence for pivots
};

// Runs one algorithm. Pivot and clustering algorithms ignore the weights
// while repairing; the reported cost is always the weighted l0 cost.
RepairResult run_algorithm(Algo algo, const WeightedInstance& inst,
                           std::uint64_t seed, const AlgoOptions& options);

// Metric check for metric algorithms, ultrametric check otherwise.
bool output_valid(Algo algo, const DistanceMatrix& y);

// "kind:key=value,key=value", e.g. "star:m=128" or
// "random-ultra:n=6,levels=3,flip=0.1".
struct GeneratorSpec {
  std::string kind;
  std::map<std::string, std::string> params;

  static GeneratorSpec Parse(std::string_view text);
  std::string str() const;
  double number(const std::string& key, double fallback) const;
};

struct GeneratedInstance {
  DistanceMatrix x;
  // Known optimum or upper bound independent of the oracle, if any.
  std::optional<double> reference;
  std::string reference_kind;
};

GeneratedInstance generate(const GeneratorSpec& spec, std::uint64_t seed);

struct BenchConfig {
  std::vector<Algo> algos;
  GeneratorSpec generator;
  std::vector<std::uint64_t> seeds;
  int oracle_limit = 7;
  int threads = 1;
  AlgoOptions options;
};

struct BenchRow {
  Algo algo = Algo::kPivotMetric;
  std::uint64_t seed = 0;
  int n = 0;
  double cost = 0.0;
  std::optional<double> reference;
  std::string reference_kind;  // "oracle", "known", "bound" or empty
  bool valid = true;
  std::vector<std::int64_t> modification_histogram;  // pairs written k times
  double runtime_ms = 0.0;
};

struct BenchSummary {
  Algo algo = Algo::kPivotMetric;
  int rows = 0;
  int invalid = 0;
  double cost_min = 0.0;
  double cost_mean = 0.0;
  double cost_max = 0.0;
  double cost_ci95 = 0.0;  // half-width of the normal 95% interval
  int ratio_rows = 0;
  double ratio_min = 0.0;
  double ratio_mean = 0.0;
  double ratio_max = 0.0;
  std::vector<std::int64_t> modification_histogram;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;  // grouped by algorithm, sorted by seed
  std::vector<BenchSummary> summaries;
  int invalid() const;
};

BenchReport bench_ratio(const BenchConfig& config);

// Aligned-column table. Runtimes appear only when `timing` is set.
std::string format_bench_text(const BenchReport& report, bool timing);
// One JSON object per row followed by one per algorithm summary.
std::string format_bench_jsonl(const BenchReport& report, bool timing);

}  // namespace mvd

#endif  // MVDLIB_BENCH_H_
