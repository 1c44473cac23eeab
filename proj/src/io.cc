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

#include "mvdlib/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace mvd {
namespace {

class LineError {
 public:
  LineError(std::string_view source, int line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(std::string(source_) + ":" + std::to_string(line_) + ": " +
                what);
  }

 private:
  std::string_view source_;
  int line_;
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

template <typename T>
bool parse_token(std::string_view tok, T& out) {
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

struct Line {
  int number = 0;
  std::string_view text;
};

// Non-comment, non-blank lines with trailing CR stripped.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++number;
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    out.push_back({number, line});
  }
  return out;
}

std::string pair_name(int i, int j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, ptr);
}

std::string format_instance(const WeightedInstance& inst) {
  const int n = inst.size();
  std::string out;
  out += kInstanceMagic;
  out += "\nn " + std::to_string(n) + "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out += std::to_string(i) + " " + std::to_string(j) + " " +
             format_number(inst.distances()(i, j));
      const double w = inst.weight(i, j);
      if (w != 1.0) out += " " + format_number(w);
      out += "\n";
    }
  }
  return out;
}

std::string format_instance(const DistanceMatrix& x) {
  return format_instance(WeightedInstance(x));
}

WeightedInstance parse_instance_text(std::string_view text,
                                     std::string_view source) {
  const std::vector<Line> lines = content_lines(text);
  if (lines.empty()) LineError(source, 1).fail("empty instance");

  const Line& magic = lines[0];
  if (split_ws(magic.text) != std::vector<std::string_view>{"mvdlib-instance",
                                                            "1"}) {
    LineError(source, magic.number)
        .fail("malformed header: expected 'mvdlib-instance 1'");
  }
  if (lines.size() < 2) {
    LineError(source, magic.number + 1).fail("missing size line 'n <count>'");
  }
  const Line& size_line = lines[1];
  const auto size_tok = split_ws(size_line.text);
  int n = 0;
  if (size_tok.size() != 2 || size_tok[0] != "n" ||
      !parse_token(size_tok[1], n) || n < 1) {
    LineError(source, size_line.number)
        .fail("malformed size line: expected 'n <count>'");
  }

  DistanceMatrix x(n);
  DistanceMatrix w(n, 1.0);
  std::vector<int> seen_at(num_pairs(n), 0);
  for (std::size_t k = 2; k < lines.size(); ++k) {
    const LineError err(source, lines[k].number);
    const auto tok = split_ws(lines[k].text);
    if (tok.size() != 3 && tok.size() != 4) {
      err.fail("expected 'i j x [w]'");
    }
    int i = 0, j = 0;
    double value = 0.0, weight = 1.0;
    if (!parse_token(tok[0], i) || !parse_token(tok[1], j)) {
      err.fail("malformed point index");
    }
    if (i < 0 || j < 0 || i >= n || j >= n) {
      err.fail("point index out of range in pair " + pair_name(i, j));
    }
    if (i >= j) err.fail("pair " + pair_name(i, j) + " must have i < j");
    if (!parse_token(tok[2], value) || !std::isfinite(value)) {
      err.fail("malformed distance for pair " + pair_name(i, j));
    }
    if (value < 0.0) err.fail("negative distance for pair " + pair_name(i, j));
    if (tok.size() == 4) {
      if (!parse_token(tok[3], weight) || !std::isfinite(weight)) {
        err.fail("malformed weight for pair " + pair_name(i, j));
      }
      if (weight < 0.0) err.fail("negative weight for pair " + pair_name(i, j));
    }
    const std::size_t idx = pair_index(n, Pair{i, j});
    if (seen_at[idx] != 0) {
      err.fail("duplicate pair " + pair_name(i, j) + " (first on line " +
               std::to_string(seen_at[idx]) + ")");
    }
    seen_at[idx] = lines[k].number;
    x.set(i, j, value);
    w.set(i, j, weight);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (seen_at[pair_index(n, Pair{i, j})] == 0) {
        throw Error(std::string(source) + ": missing pair " + pair_name(i, j));
      }
    }
  }
  return WeightedInstance(std::move(x), std::move(w));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("write failed: " + path);
}

WeightedInstance read_instance(const std::string& path) {
  return parse_instance_text(read_file(path), path);
}

void write_instance(const WeightedInstance& inst, const std::string& path) {
  write_file(path, format_instance(inst));
}

std::string format_signed_graph(const SignedGraph& g) {
  const int n = g.size();
  std::string out;
  out += kInstanceMagic;
  out += "\nn " + std::to_string(n) + "\n# signed\n";
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out += std::to_string(i) + " " + std::to_string(j) +
             (g.plus(i, j) ? " 0\n" : " 1\n");
    }
  }
  return out;
}

SignedGraph parse_signed_graph_text(std::string_view text,
                                    std::string_view source) {
  const WeightedInstance inst = parse_instance_text(text, source);
  const int n = inst.size();
  SignedGraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = inst.distances()(i, j);
      if (v == 0.0) {
        g.add_plus(i, j);
      } else if (v != 1.0) {
        throw Error(std::string(source) + ": signed graph pair " +
                    pair_name(i, j) + " must be 0 (+) or 1 (-)");
      }
    }
  }
  return g;
}

SignedGraph read_signed_graph(const std::string& path) {
  return parse_signed_graph_text(read_file(path), path);
}

std::vector<int> parse_index_list(std::string_view text,
                                  std::string_view source) {
  std::vector<int> out;
  for (const Line& line : content_lines(text)) {
    for (std::string_view tok : split_ws(line.text)) {
      int v = 0;
      if (!parse_token(tok, v)) {
        LineError(source, line.number)
            .fail("malformed index '" + std::string(tok) + "'");
      }
      out.push_back(v);
    }
  }
  return out;
}

std::string format_trace_jsonl(const PivotTrace& trace) {
  std::string out;
  for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
    nlohmann::json changes = nlohmann::json::array();
    for (const PairChange& c : trace.rounds[r].changes) {
      changes.push_back({c.pair.i, c.pair.j, c.old_value, c.new_value});
    }
    nlohmann::ordered_json obj;
    obj["round"] = r;
    obj["pivot"] = trace.rounds[r].pivot;
    obj["changes"] = std::move(changes);
    out += obj.dump();
    out += "\n";
  }
  return out;
}

}  // namespace mvd
