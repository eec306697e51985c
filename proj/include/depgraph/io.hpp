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

#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>

#include "depgraph/degree.hpp"
#include "depgraph/edge_list.hpp"
#include "depgraph/fitting.hpp"
#include "depgraph/graph.hpp"

namespace depgraph {

/// Locale-independent shortest round-trip decimal form of a double.
inline std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buffer, ptr);
}

enum class DistForm { cdf, icd };
enum class DistMode { proportion, count };

inline const char* to_string(DistForm f) noexcept {
  return f == DistForm::cdf ? "cdf" : "icd";
}
inline const char* to_string(DistMode m) noexcept {
  return m == DistMode::proportion ? "proportion" : "count";
}

/// Writes one degree distribution as CSV (`degree,value`, ascending
/// degrees). Proportion mode emits the CDF/ICD as proportions of nodes;
/// count mode emits raw node counts, the form used for log-log plots.
template <class NodeId>
void emit_distribution(const DependencyGraph<NodeId>& g, Direction direction,
                       DistForm form, DistMode mode, std::ostream& out) {
  if (g.node_count() == 0)
    throw std::invalid_argument("emit_distribution: empty graph");
  const DegreeView view = degree_view(g, direction);
  out << "degree,value\n";
  if (mode == DistMode::proportion) {
    const auto rows = form == DistForm::cdf ? to_cdf(view) : to_icd(view);
    for (const auto& [degree, value] : rows)
      out << degree << ',' << format_double(value) << '\n';
  } else {
    const auto rows =
        form == DistForm::cdf ? to_cdf_counts(view) : to_icd_counts(view);
    for (const auto& [degree, value] : rows)
      out << degree << ',' << value << '\n';
  }
}

template <class NodeId>
void emit_distribution_file(const DependencyGraph<NodeId>& g,
                            Direction direction, DistForm form, DistMode mode,
                            const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  emit_distribution(g, direction, form, mode, out);
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

/// Per-cell grid-search results as CSV:
/// `p,q,delta_min,delta_median,delta_max`.
inline void write_fit_cells_csv(const FitReport& report, std::ostream& out) {
  out << "p,q,delta_min,delta_median,delta_max\n";
  for (const CellStats& cell : report.cells)
    out << format_double(cell.p) << ',' << format_double(cell.q) << ','
        << format_double(cell.delta_min) << ','
        << format_double(cell.delta_median) << ','
        << format_double(cell.delta_max) << '\n';
}

inline void write_fit_cells_csv_file(const FitReport& report,
                                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_fit_cells_csv(report, out);
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace depgraph
