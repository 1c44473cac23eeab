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

// Text formats.
//
// Instance file:
//
//   mvdlib-instance 1
//   n 3
//   0 1 2
//   0 2 1.5 4
//   1 2 1
//
// Each pair line is `i j x [w]` with 0-based i < j; the weight defaults to 1.
// Lines starting with `#` are comments. Every pair must appear exactly once.
// Signed graphs use the same layout with x in {0 (+), 1 (-)} and a
// `# signed` comment after the size line.

#ifndef MVDLIB_IO_H_
#define MVDLIB_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "mvdlib/core.h"
#include "mvdlib/corrclust.h"

namespace mvd {

inline constexpr std::string_view kInstanceMagic = "mvdlib-instance 1";

// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

// Canonical text: pairs in row-major order, weight column only when != 1.
std::string format_instance(const WeightedInstance& inst);
std::string format_instance(const DistanceMatrix& x);

// `source` prefixes error messages ("<source>:<line>: ...").
WeightedInstance parse_instance_text(std::string_view text,
                                     std::string_view source = "<input>");

WeightedInstance read_instance(const std::string& path);
void write_instance(const WeightedInstance& inst, const std::string& path);

std::string format_signed_graph(const SignedGraph& g);
SignedGraph parse_signed_graph_text(std::string_view text,
                                    std::string_view source = "<input>");
SignedGraph read_signed_graph(const std::string& path);

// Whitespace-separated point indices.
std::vector<int> parse_index_list(std::string_view text,
                                  std::string_view source = "<input>");

// One JSON object per round: {"round":r,"pivot":p,"changes":[[j,k,old,new]]}.
std::string format_trace_jsonl(const PivotTrace& trace);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace mvd

#endif  // MVDLIB_IO_H_
