// Copyright 2026 The depgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "depgraph/graph.hpp"

namespace depgraph {

/// A file could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An edge-list line did not have the `<source> <target>` shape.
class EdgeListParseError : public std::runtime_error {
 public:
  EdgeListParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Counts of input irregularities repaired while importing an edge list.
struct ParseDiagnostics {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges_dropped = 0;
};

/// Reads an edge list: one `<source-id> <target-id>` pair per line,
/// whitespace separated; `#` comment lines and blank lines are ignored;
/// LF and CRLF both accepted. Nodes are registered in order of first
/// appearance. Self-loops and repeated edges are dropped and counted in
/// `diagnostics`, keeping the graph simple.
inline LabeledGraph parse_edge_list(std::istream& in,
                                    ParseDiagnostics* diagnostics = nullptr) {
  LabeledGraph g;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string source, target, extra;
    if (!(fields >> source)) continue;  // whitespace-only line
    if (!(fields >> target))
      throw EdgeListParseError(line_number, "expected two identifiers");
    if (fields >> extra)
      throw EdgeListParseError(line_number, "trailing content after edge");
    const NodeIndex from = g.ensure_node(source);
    const NodeIndex to = g.ensure_node(target);
    switch (g.add_edge(from, to)) {
      case EdgeOutcome::added:
        break;
      case EdgeOutcome::self_loop:
        if (diagnostics) ++diagnostics->self_loops_dropped;
        break;
      case EdgeOutcome::duplicate_edge:
        if (diagnostics) ++diagnostics->duplicate_edges_dropped;
        break;
    }
  }
  return g;
}

inline LabeledGraph parse_edge_list_file(const std::string& path,
                                         ParseDiagnostics* diagnostics =
                                             nullptr) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path + " for reading");
  return parse_edge_list(in, diagnostics);
}

/// Writes the edge list with LF line endings, one `<source> <target>` pair
/// per line: sources in node insertion order, targets in edge insertion
/// order. Nodes without any incident edge do not appear; the format cannot
/// represent them.
template <class NodeId>
void write_edge_list(const DependencyGraph<NodeId>& g, std::ostream& out) {
  g.for_each_edge([&](NodeIndex u, NodeIndex v) {
    out << g.node_id(u) << ' ' << g.node_id(v) << '\n';
  });
}

template <class NodeId>
void write_edge_list_file(const DependencyGraph<NodeId>& g,
                          const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_edge_list(g, out);
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace depgraph
