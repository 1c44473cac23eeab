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

#include "mvdlib/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "mvdlib/instances.h"
#include "mvdlib/oracle.h"
#include "mvdlib/pivot.h"
#include "mvdlib/umvd_cc.h"

namespace mvd {
namespace {

constexpr std::uint64_t kAlgoSeedMix = 0x9e3779b97f4a7c15ULL;

RepairResult reweighted(const WeightedInstance& inst, RepairResult r,
                        double eq_tol) {
  if (inst.unit_weights()) return r;
  RepairResult out = make_repair_result(inst, std::move(r.output), eq_tol);
  out.trace = std::move(r.trace);
  return out;
}

std::vector<std::int64_t> histogram_of(const RepairResult& r, int n) {
  std::vector<std::int64_t> hist;
  if (r.trace) {
    for (int c : r.trace->modification_count) {
      if (static_cast<std::size_t>(c) >= hist.size()) hist.resize(c + 1, 0);
      ++hist[c];
    }
    return hist;
  }
  const auto changed = static_cast<std::int64_t>(r.modified_pairs.size());
  hist = {static_cast<std::int64_t>(num_pairs(n)) - changed, changed};
  return hist;
}

void merge_histogram(std::vector<std::int64_t>& into,
                     const std::vector<std::int64_t>& h) {
  if (into.size() < h.size()) into.resize(h.size(), 0);
  for (std::size_t k = 0; k < h.size(); ++k) into[k] += h[k];
}

int int_param(const GeneratorSpec& spec, const std::string& key) {
  const double v = spec.number(key, std::nan(""));
  if (std::isnan(v)) {
    throw Error("generator '" + spec.kind + "' needs parameter '" + key + "'");
  }
  if (v != std::floor(v)) throw Error("parameter '" + key + "' must be integer");
  return static_cast<int>(v);
}

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

// Everything computed for one seed.
struct SeedOutcome {
  std::vector<BenchRow> rows;  // one per configured algorithm
};

SeedOutcome run_seed(const BenchConfig& config, std::uint64_t seed) {
  const GeneratedInstance gen = generate(config.generator, seed);
  const WeightedInstance inst(gen.x);
  const int n = gen.x.size();
  std::optional<int> metric_opt;
  std::optional<int> ultra_opt;
  SeedOutcome out;
  for (Algo algo : config.algos) {
    BenchRow row;
    row.algo = algo;
    row.seed = seed;
    row.n = n;
    if (n <= config.oracle_limit && n <= kOracleMaxPoints) {
      std::optional<int>& opt = targets_metric(algo) ? metric_opt : ultra_opt;
      if (!opt) {
        opt = targets_metric(algo) ? exact_mvd(gen.x).cost
                                   : exact_umvd(gen.x).cost;
      }
      row.reference = *opt;
      row.reference_kind = "oracle";
    } else if (gen.reference) {
      row.reference = gen.reference;
      row.reference_kind = gen.reference_kind;
    }
    AlgoOptions options = config.options;
    options.record_trace =
        algo == Algo::kPivotMetric || algo == Algo::kPivotUltra;
    const auto start = std::chrono::steady_clock::now();
    const RepairResult r =
        run_algorithm(algo, inst, seed ^ kAlgoSeedMix, options);
    const auto stop = std::chrono::steady_clock::now();
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    row.valid = output_valid(algo, r.output);
    row.cost = r.cost;
    row.modification_histogram = histogram_of(r, n);
    out.rows.push_back(std::move(row));
  }
  return out;
}

BenchSummary summarize(Algo algo, const std::vector<BenchRow>& rows) {
  BenchSummary s;
  s.algo = algo;
  double sum = 0.0, sum_sq = 0.0, ratio_sum = 0.0;
  for (const BenchRow& row : rows) {
    if (row.algo != algo) continue;
    if (s.rows == 0) {
      s.cost_min = s.cost_max = row.cost;
    }
    ++s.rows;
    if (!row.valid) ++s.invalid;
    s.cost_min = std::min(s.cost_min, row.cost);
    s.cost_max = std::max(s.cost_max, row.cost);
    sum += row.cost;
    sum_sq += row.cost * row.cost;
    merge_histogram(s.modification_histogram, row.modification_histogram);
    if (row.reference && *row.reference > 0.0) {
      const double ratio = row.cost / *row.reference;
      if (s.ratio_rows == 0) s.ratio_min = s.ratio_max = ratio;
      ++s.ratio_rows;
      s.ratio_min = std::min(s.ratio_min, ratio);
      s.ratio_max = std::max(s.ratio_max, ratio);
      ratio_sum += ratio;
    }
  }
  if (s.rows > 0) {
    s.cost_mean = sum / s.rows;
    if (s.rows > 1) {
      const double var =
          std::max(0.0, (sum_sq - s.rows * s.cost_mean * s.cost_mean) /
                            (s.rows - 1));
      s.cost_ci95 = 1.96 * std::sqrt(var / s.rows);
    }
  }
  if (s.ratio_rows > 0) s.ratio_mean = ratio_sum / s.ratio_rows;
  return s;
}

}  // namespace

Algo parse_algo(std::string_view name) {
  if (name == "pivot-metric") return Algo::kPivotMetric;
  if (name == "pivot-ultra") return Algo::kPivotUltra;
  if (name == "cc-ultra") return Algo::kCcUltra;
  if (name == "lp-ultra") return Algo::kLpUltra;
  throw Error("unknown algorithm '" + std::string(name) + "'");
}

std::string_view algo_name(Algo algo) {
  switch (algo) {
    case Algo::kPivotMetric:
      return "pivot-metric";
    case Algo::kPivotUltra:
      return "pivot-ultra";
    case Algo::kCcUltra:
      return "cc-ultra";
    case Algo::kLpUltra:
      return "lp-ultra";
  }
  return "?";
}

bool targets_metric(Algo algo) { return algo == Algo::kPivotMetric; }

RepairResult run_algorithm(Algo algo, const WeightedInstance& inst,
                           std::uint64_t seed, const AlgoOptions& options) {
  const PivotSource source = options.pivots
                                 ? PivotSource::Explicit(*options.pivots)
                                 : PivotSource::Seeded(seed);
  const PivotOptions pivot_options{options.record_trace, options.eq_tol};
  switch (algo) {
    case Algo::kPivotMetric:
      return reweighted(inst, mvd_pivot(inst.distances(), source, pivot_options),
                        options.eq_tol);
    case Algo::kPivotUltra:
      return reweighted(inst,
                        umvd_pivot(inst.distances(), source, pivot_options),
                        options.eq_tol);
    case Algo::kCcUltra:
      return reweighted(
          inst, umvd_constant(inst.distances(), options.cc, options.eq_tol).repair,
          options.eq_tol);
    case Algo::kLpUltra: {
      const BuiltinLpSolver builtin;
      const LpSolver& solver = options.solver ? *options.solver : builtin;
      return umvd_lp(inst, solver, options.k0, options.eq_tol).rounding.repair;
    }
  }
  throw Error("unknown algorithm");
}

bool output_valid(Algo algo, const DistanceMatrix& y) {
  return targets_metric(algo) ? is_metric(y) : is_ultrametric(y);
}

GeneratorSpec GeneratorSpec::Parse(std::string_view text) {
  GeneratorSpec spec;
  const std::size_t colon = text.find(':');
  spec.kind = std::string(text.substr(0, colon));
  if (spec.kind.empty()) throw Error("empty generator spec");
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const std::size_t comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error("malformed generator parameter '" + std::string(item) + "'");
    }
    spec.params[std::string(item.substr(0, eq))] =
        std::string(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return spec;
}

std::string GeneratorSpec::str() const {
  std::string out = kind;
  char sep = ':';
  for (const auto& [k, v] : params) {
    out += sep;
    out += k + "=" + v;
    sep = ',';
  }
  return out;
}

double GeneratorSpec::number(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw Error("parameter '" + key + "' is not a number: " + it->second);
  }
}

GeneratedInstance generate(const GeneratorSpec& spec, std::uint64_t seed) {
  if (spec.kind == "star") {
    return {gen_star(int_param(spec, "m")), 1.0, "known"};
  }
  if (spec.kind == "hypercube") {
    const int d = int_param(spec, "d");
    return {gen_hypercube(d), static_cast<double>((1 << d) * d / 2), "bound"};
  }
  if (spec.kind == "random-ultra") {
    const int n = int_param(spec, "n");
    const int levels = static_cast<int>(spec.number("levels", 3));
    return {gen_random_ultra_noise(n, levels, spec.number("flip", 0.1), seed)
                .noised,
            std::nullopt,
            ""};
  }
  if (spec.kind == "random-metric") {
    const int n = int_param(spec, "n");
    return {gen_random_metric_noise(n, spec.number("flip", 0.1), seed).noised,
            std::nullopt,
            ""};
  }
  throw Error("unknown generator '" + spec.kind + "'");
}

int BenchReport::invalid() const {
  int total = 0;
  for (const BenchSummary& s : summaries) total += s.invalid;
  return total;
}

BenchReport bench_ratio(const BenchConfig& config) {
  if (config.algos.empty()) throw Error("no algorithms to benchmark");
  // Fail fast on a bad generator before spawning workers.
  if (!config.seeds.empty()) generate(config.generator, config.seeds.front());

  std::vector<SeedOutcome> outcomes(config.seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= config.seeds.size()) return;
      try {
        outcomes[k] = run_seed(config, config.seeds[k]);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = config.seeds.size();
      }
    }
  };
  const int threads = std::max(1, config.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  BenchReport report;
  report.config = config;
  for (std::size_t a = 0; a < config.algos.size(); ++a) {
    std::vector<BenchRow> rows;
    for (const SeedOutcome& o : outcomes) rows.push_back(o.rows[a]);
    std::stable_sort(rows.begin(), rows.end(),
                     [](const BenchRow& l, const BenchRow& r) {
                       return l.seed < r.seed;
                     });
    report.summaries.push_back(summarize(config.algos[a], rows));
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  return report;
}

std::string format_bench_text(const BenchReport& report, bool timing) {
  std::string out = "generator " + report.config.generator.str() + "\nseeds " +
                    std::to_string(report.config.seeds.size()) +
                    "\noracle_limit " +
                    std::to_string(report.config.oracle_limit) + "\n\n";
  const std::vector<std::string> header = {
      "algo",      "rows",      "invalid",    "cost_min",  "cost_mean",
      "cost_ci95", "cost_max",  "ratio_rows", "ratio_min", "ratio_mean",
      "ratio_max"};
  std::vector<std::vector<std::string>> table = {header};
  for (const BenchSummary& s : report.summaries) {
    table.push_back({std::string(algo_name(s.algo)), std::to_string(s.rows),
                     std::to_string(s.invalid), fixed(s.cost_min),
                     fixed(s.cost_mean), fixed(s.cost_ci95), fixed(s.cost_max),
                     std::to_string(s.ratio_rows), fixed(s.ratio_min),
                     fixed(s.ratio_mean), fixed(s.ratio_max)});
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      width[c] = std::max(width[c], line[c].size() + 1);
    }
  }
  for (const auto& line : table) {
    std::string text;
    for (std::size_t c = 0; c < line.size(); ++c) text += pad(line[c], width[c]);
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text + "\n";
  }
  out += "\nmodification histogram (pairs written k times)\n";
  for (const BenchSummary& s : report.summaries) {
    out += std::string(algo_name(s.algo)) + ":";
    for (std::size_t k = 0; k < s.modification_histogram.size(); ++k) {
      out += " " + std::to_string(k) + "=" +
             std::to_string(s.modification_histogram[k]);
    }
    out += "\n";
  }
  if (timing) {
    out += "\nruntime_ms\n";
    for (const BenchSummary& s : report.summaries) {
      double total = 0.0;
      for (const BenchRow& row : report.rows) {
        if (row.algo == s.algo) total += row.runtime_ms;
      }
      out += std::string(algo_name(s.algo)) + ": total=" + fixed(total, 3) +
             " mean=" + fixed(s.rows ? total / s.rows : 0.0, 3) + "\n";
    }
  }
  return out;
}

std::string format_bench_jsonl(const BenchReport& report, bool timing) {
  std::string out;
  for (const BenchRow& row : report.rows) {
    nlohmann::ordered_json j;
    j["type"] = "row";
    j["algo"] = algo_name(row.algo);
    j["generator"] = report.config.generator.str();
    j["seed"] = row.seed;
    j["n"] = row.n;
    j["cost"] = row.cost;
    j["valid"] = row.valid;
    if (row.reference) {
      j["reference"] = *row.reference;
      j["reference_kind"] = row.reference_kind;
    }
    j["modification_histogram"] = row.modification_histogram;
    if (timing) j["runtime_ms"] = row.runtime_ms;
    out += j.dump() + "\n";
  }
  for (const BenchSummary& s : report.summaries) {
    nlohmann::ordered_json j;
    j["type"] = "summary";
    j["algo"] = algo_name(s.algo);
    j["generator"] = report.config.generator.str();
    j["rows"] = s.rows;
    j["invalid"] = s.invalid;
    j["cost_min"] = s.cost_min;
    j["cost_mean"] = s.cost_mean;
    j["cost_ci95"] = s.cost_ci95;
    j["cost_max"] = s.cost_max;
    j["ratio_rows"] = s.ratio_rows;
    j["ratio_min"] = s.ratio_min;
    j["ratio_mean"] = s.ratio_mean;
    j["ratio_max"] = s.ratio_max;
    j["modification_histogram"] = s.modification_histogram;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace mvd
