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

#include "mvdlib/corrclust.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <numeric>
#include <string>

namespace mvd {

Ratio Ratio::Parse(std::string_view text) {
  auto fail = [&]() -> Error {
    return Error("cannot parse '" + std::string(text) + "' as a ratio");
  };
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() ||
        v < 0) {
      throw fail();
    }
    return v;
  };
  if (!text.empty() && text.front() == '-') throw fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Ratio r{parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
    if (r.den == 0) throw fail();
    return r;
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return {parse_int(text), 1};
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 12) throw fail();
  std::int64_t den = 1;
  for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
  const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
  Ratio r{w * den + parse_int(frac), den};
  const std::int64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

void AgreementParams::validate() const {
  if (eps.den <= 0 || eps.num <= 0) throw Error("eps must be positive");
  // eps < 1/50
  if (50 * eps.num >= eps.den) throw Error("eps must be below 1/50");
  const double e = eps.value();
  const double d = delta;
  const bool first = (1.0 / 3 - d * e) / (1 + d * e) > e / 8;
  const bool second =
      1.0 / (1 + (1.0 / 3 + d * e) / (2.0 / 3 - d * e)) > e / 8;
  if (!first || !second) {
    throw Error("eps violates the density constraints for delta=" +
                std::to_string(delta));
  }
}

SignedGraph::SignedGraph(int n)
    : n_(n),
      adj_(static_cast<std::size_t>(n)),
      plus_(static_cast<std::size_t>(n) * n, 0) {
  if (n < 1) throw Error("SignedGraph needs at least one vertex");
}

SignedGraph SignedGraph::FromPlusEdges(int n,
                                       std::span<const Pair> plus_edges) {
  SignedGraph g(n);
  for (const Pair& e : plus_edges) g.add_plus(e.i, e.j);
  return g;
}

void SignedGraph::add_plus(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) {
    throw Error("invalid + edge (" + std::to_string(u) + "," +
                std::to_string(v) + ")");
  }
  if (plus(u, v)) return;
  plus_[static_cast<std::size_t>(u) * n_ + v] = 1;
  plus_[static_cast<std::size_t>(v) * n_ + u] = 1;
  adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

std::size_t SignedGraph::num_plus_edges() const {
  std::size_t total = 0;
  for (const auto& a : adj_) total += a.size();
  return total / 2;
}

std::vector<int> Clustering::labels(int n) const {
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].empty()) throw Error("empty cluster");
    for (int v : clusters[c]) {
      if (v < 0 || v >= n || label[v] >= 0) {
        throw Error("clustering is not a partition at vertex " +
                    std::to_string(v));
      }
      label[v] = static_cast<int>(c);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (label[v] < 0) {
      throw Error("vertex " + std::to_string(v) + " is not clustered");
    }
  }
  return label;
}

namespace {

class Bitset {
 public:
  explicit Bitset(int n) : words_((static_cast<std::size_t>(n) + 63) / 64) {}

  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  // |a & b|
  static int count_and(const Bitset& a, const Bitset& b) {
    int c = 0;
    for (std::size_t k = 0; k < a.words_.size(); ++k) {
      c += std::popcount(a.words_[k] & b.words_[k]);
    }
    return c;
  }
  // |(a ^ b) & mask|
  static int count_xor_masked(const Bitset& a, const Bitset& b,
                              const Bitset& mask) {
    int c = 0;
    for (std::size_t k = 0; k < a.words_.size(); ++k) {
      c += std::popcount((a.words_[k] ^ b.words_[k]) & mask.words_[k]);
    }
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Closed neighborhoods as bitsets.
std::vector<Bitset> closed_neighborhoods(const SignedGraph& g) {
  std::vector<Bitset> out;
  out.reserve(g.size());
  for (int u = 0; u < g.size(); ++u) {
    Bitset b(g.size());
    b.set(u);
    for (int v : g.plus_neighbors(u)) b.set(v);
    out.push_back(std::move(b));
  }
  return out;
}

using i128 = __int128;

// The algorithm state restricted to a residual vertex set.
class AgreementRun {
 public:
  AgreementRun(const SignedGraph& g, const AgreementParams& p)
      : g_(g), num_(p.eps.num), den_(p.eps.den), closed_(closed_neighborhoods(g)),
        residual_(g.size()) {
    for (int u = 0; u < g.size(); ++u) residual_.set(u);
  }

  bool alive(int u) const { return residual_.test(u); }
  void remove(int u) { residual_.reset(u); }

  int degree(int u) const {
    return Bitset::count_and(closed_[u], residual_);
  }
  bool agree(int u, int v) const {
    const int sym = Bitset::count_xor_masked(closed_[u], closed_[v], residual_);
    const int m = std::min(degree(u), degree(v));
    return i128{den_} * sym <= i128{num_} * m;
  }

  // Steps 1-7 for seed v; returns the cluster to emit.
  std::vector<int> carve(int v) const {
    const int n = g_.size();
    Bitset agreeing(n);
    int num_agreeing = 0;
    for (int u = 0; u < n; ++u) {
      if (alive(u) && agree(u, v)) {
        agreeing.set(u);
        ++num_agreeing;
      }
    }
    // S(v) := A(v) ∩ N(v).
    Bitset s(n);
    int core = 0;
    for (int u = 0; u < n; ++u) {
      if (agreeing.test(u) && closed_[v].test(u)) {
        s.set(u);
        ++core;
      }
    }
    const std::vector<int> singleton{v};
    const int m = std::min(degree(v), num_agreeing);
    // |A ∩ N| <= (1 - eps/2) min(|N(v)|, |A(v)|)
    if (i128{2} * den_ * core <= i128{2 * den_ - num_} * m) return singleton;

    int size = core;
    for (bool changed = true; changed;) {
      changed = false;
      for (int u = 0; u < n; ++u) {
        if (!s.test(u)) continue;
        const int deg = degree(u);
        const int inside = Bitset::count_and(closed_[u], s);
        const int outside = deg - inside;
        const bool too_many_outside = i128{den_} * outside > i128{2} * num_ * deg;
        const bool too_few_inside =
            i128{den_} * inside < i128{den_ - 2 * num_} * size;
        if (too_many_outside || too_few_inside) {
          s.reset(u);
          --size;
          changed = true;
        }
      }
    }
    // |S| < (1 - eps) |A ∩ N|
    if (i128{den_} * size < i128{den_ - num_} * core) return singleton;

    for (bool changed = true; changed;) {
      changed = false;
      for (int u = 0; u < n; ++u) {
        if (!alive(u) || s.test(u)) continue;
        const int deg = degree(u);
        const int inside = Bitset::count_and(closed_[u], s);
        const bool mostly_inside =
            i128{den_} * inside > i128{den_ - 4 * num_} * deg;
        const bool covers = i128{den_} * inside >= i128{den_ - 4 * num_} * size;
        if (mostly_inside && covers) {
          s.set(u);
          ++size;
          changed = true;
        }
      }
    }
    // |S| > (1 + 3 eps) |A ∩ N|
    if (i128{den_} * size > i128{den_ + 3 * num_} * core) return singleton;

    std::vector<int> cluster;
    cluster.reserve(size);
    for (int u = 0; u < n; ++u) {
      if (s.test(u)) cluster.push_back(u);
    }
    return cluster;
  }

 private:
  const SignedGraph& g_;
  std::int64_t num_;
  std::int64_t den_;
  std::vector<Bitset> closed_;
  Bitset residual_;
};

}  // namespace

bool agree(int u, int v, const SignedGraph& g, const AgreementParams& p) {
  return AgreementRun(g, p).agree(u, v);
}

Clustering agreement_cluster(const SignedGraph& g, const AgreementParams& p,
                             std::span<const int> order) {
  const int n = g.size();
  std::vector<int> seeds(order.begin(), order.end());
  if (seeds.empty()) {
    seeds.resize(n);
    std::iota(seeds.begin(), seeds.end(), 0);
  }
  {
    std::vector<int> sorted = seeds;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < n; ++k) {
      if (static_cast<int>(sorted.size()) != n || sorted[k] != k) {
        throw Error("vertex order must be a permutation of 0..n-1");
      }
    }
  }
  AgreementRun run(g, p);
  Clustering result;
  int remaining = n;
  std::size_t next = 0;
  while (remaining > 0) {
    while (!run.alive(seeds[next])) ++next;
    std::vector<int> cluster = run.carve(seeds[next]);
    for (int u : cluster) run.remove(u);
    remaining -= static_cast<int>(cluster.size());
    result.clusters.push_back(std::move(cluster));
  }
  return result;
}

std::int64_t cc_cost(const SignedGraph& g, const Clustering& c) {
  const int n = g.size();
  const std::vector<int> label = c.labels(n);
  std::int64_t cost = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.plus(u, v) != (label[u] == label[v])) ++cost;
    }
  }
  return cost;
}

std::pair<Clustering, std::int64_t> cc_brute_force(const SignedGraph& g) {
  const int n = g.size();
  if (n > 10) throw Error("cc_brute_force supports at most 10 vertices");
  // Restricted growth strings: rgs[0] = 0, rgs[k] <= 1 + max(rgs[0..k-1]).
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
  std::vector<int> best;
  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  for (;;) {
    std::int64_t cost = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (g.plus(u, v) != (rgs[u] == rgs[v])) ++cost;
      }
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = rgs;
    }
    int k = n - 1;
    while (k > 0 && rgs[k] > prefix_max[k - 1]) --k;
    if (k <= 0) break;
    ++rgs[k];
    prefix_max[k] = std::max(prefix_max[k - 1], rgs[k]);
    for (int j = k + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[k];
    }
  }
  Clustering c;
  for (int u = 0; u < n; ++u) {
    if (best[u] >= static_cast<int>(c.clusters.size())) {
      c.clusters.resize(best[u] + 1);
    }
    c.clusters[best[u]].push_back(u);
  }
  return {std::move(c), best_cost};
}

bool is_important_group(std::span<const int> group, const SignedGraph& g,
                        const AgreementParams& p) {
  if (group.empty()) throw Error("important-group check on an empty set");
  std::vector<std::uint8_t> in(static_cast<std::size_t>(g.size()), 0);
  for (int v : group) in[v] = 1;
  const auto size = static_cast<std::int64_t>(group.size());
  for (int v : group) {
    std::int64_t inside = 1;  // v itself
    std::int64_t outside = 0;
    for (int u : g.plus_neighbors(v)) (in[u] ? inside : outside) += 1;
    const std::int64_t closed = inside + outside;
    // outside <= (eps/8) |N(v)|
    if (i128{8} * p.eps.den * outside > i128{p.eps.num} * closed) return false;
    // inside >= (1 - eps/8) |C|
    if (i128{8} * p.eps.den * inside <
        i128{8 * p.eps.den - p.eps.num} * size) {
      return false;
    }
  }
  return true;
}

bool is_everywhere_dense(std::span<const int> group, const SignedGraph& g) {
  if (group.size() <= 1) return true;
  std::vector<std::uint8_t> in(static_cast<std::size_t>(g.size()), 0);
  for (int v : group) in[v] = 1;
  const auto size = static_cast<std::int64_t>(group.size());
  for (int v : group) {
    std::int64_t edges = 1;
    for (int u : g.plus_neighbors(v)) edges += in[u];
    if (3 * edges < 2 * size) return false;
  }
  return true;
}

bool satisfies_density_bounds(std::span<const int> cluster,
                              std::span<const int> residual,
                              const SignedGraph& g, const AgreementParams& p) {
  std::vector<std::uint8_t> in(static_cast<std::size_t>(g.size()), 0);
  std::vector<std::uint8_t> live(static_cast<std::size_t>(g.size()), 0);
  for (int v : residual) live[v] = 1;
  for (int v : cluster) {
    if (!live[v]) throw Error("cluster is not inside the residual set");
    in[v] = 1;
  }
  const auto size = static_cast<std::int64_t>(cluster.size());
  const std::int64_t num = p.eps.num * p.delta;
  const std::int64_t den = p.eps.den;
  for (int v : cluster) {
    std::int64_t inside = 1;
    std::int64_t outside = 0;
    for (int u : g.plus_neighbors(v)) {
      if (in[u]) {
        ++inside;
      } else if (live[u]) {
        ++outside;
      }
    }
    if (i128{den} * inside < i128{den - num} * size) return false;
    if (i128{den} * outside > i128{num} * size) return false;
  }
  return true;
}

}  // namespace mvd
