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

// Python bindings. Distance matrices cross the boundary as square symmetric
// float64 numpy arrays with a zero diagonal.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mvdlib/core.h"
#include "mvdlib/corrclust.h"
#include "mvdlib/instances.h"
#include "mvdlib/io.h"
#include "mvdlib/lp_round.h"
#include "mvdlib/oracle.h"
#include "mvdlib/pivot.h"
#include "mvdlib/umvd_cc.h"

namespace py = pybind11;

namespace mvd {
namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

DistanceMatrix to_matrix(const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) {
    throw Error("expected a square matrix");
  }
  const int n = static_cast<int>(a.shape(0));
  const auto v = a.unchecked<2>();
  DistanceMatrix x(n);
  for (int i = 0; i < n; ++i) {
    if (v(i, i) != 0.0) throw Error("diagonal must be zero");
    for (int j = i + 1; j < n; ++j) {
      if (v(i, j) != v(j, i)) throw Error("matrix must be symmetric");
      x.set(i, j, v(i, j));
    }
  }
  return x;
}

Array to_array(const DistanceMatrix& x) {
  const int n = x.size();
  Array a({n, n});
  auto v = a.mutable_unchecked<2>();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) = x(i, j);
  return a;
}

WeightedInstance to_instance(const Array& x, const std::optional<Array>& w) {
  if (!w) return WeightedInstance(to_matrix(x));
  DistanceMatrix weights = to_matrix(*w);
  return WeightedInstance(to_matrix(x), std::move(weights));
}

PivotSource source(std::uint64_t seed,
                   const std::optional<std::vector<int>>& pivots) {
  return pivots ? PivotSource::Explicit(*pivots) : PivotSource::Seeded(seed);
}

using Change = std::tuple<int, int, double, double>;

std::vector<Change> changes(const std::vector<PairChange>& list) {
  std::vector<Change> out;
  for (const PairChange& c : list)
    out.emplace_back(c.pair.i, c.pair.j, c.old_value, c.new_value);
  return out;
}

py::dict repair_dict(const RepairResult& r) {
  py::dict d;
  d["output"] = to_array(r.output);
  d["cost"] = r.cost;
  d["modified_pairs"] = changes(r.modified_pairs);
  if (r.trace) {
    py::list rounds;
    for (const auto& round : r.trace->rounds)
      rounds.append(py::make_tuple(round.pivot, changes(round.changes)));
    d["trace"] = rounds;
    d["modification_count"] = r.trace->modification_count;
  }
  return d;
}

py::dict oracle_dict(const OracleResult& r) {
  py::dict d;
  d["cost"] = r.cost;
  std::vector<std::pair<int, int>> s;
  for (const Pair& p : r.hitting_set) s.emplace_back(p.i, p.j);
  d["hitting_set"] = s;
  d["witness"] = to_array(r.witness);
  return d;
}

std::vector<std::tuple<int, int, int, std::pair<int, int>>> triangles(
    const std::vector<Triangle>& list) {
  std::vector<std::tuple<int, int, int, std::pair<int, int>>> out;
  for (const Triangle& t : list)
    out.emplace_back(t.i, t.j, t.k, std::make_pair(t.edge.i, t.edge.j));
  return out;
}

SignedGraph to_graph(const py::array_t<bool, py::array::c_style |
                                                py::array::forcecast>& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) {
    throw Error("expected a square adjacency matrix");
  }
  const int n = static_cast<int>(a.shape(0));
  const auto v = a.unchecked<2>();
  SignedGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (v(i, j) != v(j, i)) throw Error("adjacency must be symmetric");
      if (v(i, j)) g.add_plus(i, j);
    }
  return g;
}

py::array_t<bool> graph_array(const SignedGraph& g) {
  const int n = g.size();
  py::array_t<bool> a({n, n});
  auto v = a.mutable_unchecked<2>();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) = i != j && g.plus(i, j);
  return a;
}

AgreementParams params_from(const std::string& eps) {
  AgreementParams p;
  p.eps = Ratio::Parse(eps);
  return p;
}

}  // namespace
}  // namespace mvd

PYBIND11_MODULE(_mvdlib, m) {
  using namespace mvd;
  using py::arg;
  m.doc() = "Metric and ultrametric violation distance repair";
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def("is_metric", [](const Array& x, double tol) {
    return is_metric(to_matrix(x), tol);
  }, arg("x"), arg("tol") = 0.0);
  m.def("is_ultrametric", [](const Array& x, double tol) {
    return is_ultrametric(to_matrix(x), tol);
  }, arg("x"), arg("tol") = 0.0);
  m.def("metric_violations", [](const Array& x, double tol) {
    return triangles(metric_violations(to_matrix(x), tol));
  }, arg("x"), arg("tol") = 0.0,
     "Unbalanced triangles as (i, j, k, offending_edge).");
  m.def("ultrametric_violations", [](const Array& x, double tol) {
    return triangles(ultrametric_violations(to_matrix(x), tol));
  }, arg("x"), arg("tol") = 0.0);
  m.def("l0_cost",
        [](const Array& x, const Array& y, std::optional<Array> w,
           double eq_tol) {
          return l0_cost(to_instance(x, w), to_matrix(y), eq_tol);
        },
        arg("x"), arg("y"), arg("weights") = py::none(), arg("eq_tol") = 0.0);

  m.def("mvd_pivot",
        [](const Array& x, std::uint64_t seed,
           std::optional<std::vector<int>> pivots, bool trace) {
          return repair_dict(mvd_pivot(to_matrix(x), source(seed, pivots),
                                       PivotOptions{trace, 0.0}));
        },
        arg("x"), arg("seed") = 0, arg("pivots") = py::none(),
        arg("trace") = false);
  m.def("umvd_pivot",
        [](const Array& x, std::uint64_t seed,
           std::optional<std::vector<int>> pivots, bool trace) {
          return repair_dict(umvd_pivot(to_matrix(x), source(seed, pivots),
                                        PivotOptions{trace, 0.0}));
        },
        arg("x"), arg("seed") = 0, arg("pivots") = py::none(),
        arg("trace") = false);
  m.def("umvd_constant",
        [](const Array& x, const std::string& eps) {
          return repair_dict(umvd_constant(to_matrix(x), params_from(eps)).repair);
        },
        arg("x"), arg("eps") = "0.019");
  m.def("umvd_lp",
        [](const Array& x, std::optional<Array> w, double k0, bool force) {
          const UmvdLpResult r =
              umvd_lp(to_instance(x, w), BuiltinLpSolver(force), k0);
          py::dict d = repair_dict(r.rounding.repair);
          d["lp_objective"] = r.lp.objective();
          return d;
        },
        arg("x"), arg("weights") = py::none(), arg("k0") = 3.0,
        arg("force") = false);

  m.def("exact_mvd", [](const Array& x) {
    return oracle_dict(exact_mvd(to_matrix(x)));
  }, arg("x"));
  m.def("exact_umvd", [](const Array& x) {
    return oracle_dict(exact_umvd(to_matrix(x)));
  }, arg("x"));

  m.def("agreement_cluster",
        [](const py::array_t<bool, py::array::c_style | py::array::forcecast>&
               plus,
           const std::string& eps) {
          return agreement_cluster(to_graph(plus), params_from(eps)).clusters;
        },
        arg("plus"), arg("eps") = "0.019",
        "Clusters of the signed graph whose + edges are the true entries.");

  m.def("gen_star", [](int m) { return to_array(gen_star(m)); }, arg("m"));
  m.def("gen_hypercube", [](int d) { return to_array(gen_hypercube(d)); },
        arg("d"));
  m.def("hypercube_base", [](int d) { return to_array(hypercube_base(d)); },
        arg("d"));
  m.def("gen_random_ultra_noise",
        [](int n, int levels, double flip, std::uint64_t seed) {
          const NoisyInstance r = gen_random_ultra_noise(n, levels, flip, seed);
          return py::make_tuple(to_array(r.noised), to_array(r.clean));
        },
        arg("n"), arg("levels"), arg("flip"), arg("seed"));
  m.def("gen_random_metric_noise",
        [](int n, double flip, std::uint64_t seed) {
          const NoisyInstance r = gen_random_metric_noise(n, flip, seed);
          return py::make_tuple(to_array(r.noised), to_array(r.clean));
        },
        arg("n"), arg("flip"), arg("seed"));
  m.def("gen_planted_cc",
        [](const std::vector<int>& sizes, double flip, std::uint64_t seed) {
          const PlantedGraph r = gen_planted_cc(sizes, flip, seed);
          return py::make_tuple(graph_array(r.graph), r.planted.clusters);
        },
        arg("sizes"), arg("flip"), arg("seed"));

  m.def("format_instance",
        [](const Array& x, std::optional<Array> w) {
          return format_instance(to_instance(x, w));
        },
        arg("x"), arg("weights") = py::none());
  m.def("parse_instance", [](const std::string& text) {
    const WeightedInstance inst = parse_instance_text(text);
    return py::make_tuple(to_array(inst.distances()), to_array(inst.weights()));
  }, arg("text"));
}
