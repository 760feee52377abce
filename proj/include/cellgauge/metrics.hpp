// Copyright 2026 The Cellgauge Authors
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

#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "cellgauge/cell_ref.hpp"
#include "cellgauge/formula.hpp"
#include "cellgauge/graph.hpp"
#include "cellgauge/numeric.hpp"
#include "cellgauge/workbook.hpp"

namespace cellgauge {

enum class DispersionMode { kProduct, kManhattan, kEuclidean };

std::string_view to_string(DispersionMode mode);
/// Throws DomainError for unknown names.
DispersionMode parse_dispersion_mode(std::string_view name);

struct DispersionConfig {
  double alpha = 0.01;
  DispersionMode mode = DispersionMode::kProduct;

  /// Throws DomainError unless alpha > 0.
  void validate() const;
};

/// Per-cell size, structure, dispersion and span measurements. Data cells
/// carry an all-zero record.
struct CellMetrics {
  CellAddress address;
  bool is_formula = false;
  int n_operators = 0;
  int n_operands = 0;
  int depth_of_nesting = 0;
  Rational avg_nesting_level = 0;
  int decision_count = 0;
  int n_references = 0;
  double dispersion = 0.0;
  double delta_sum = 0.0;
  int col_span = 0;
  int row_span = 0;
  int cross_sheet_ref_count = 0;
  /// Same-column and same-row references mixed in one formula.
  bool mixed_axis_flag = false;
  /// References pointing right of or below the formula cell.
  int forward_ref_count = 0;
};

struct DispersionResult {
  double dispersion;
  double delta_sum;
};

/// 1 - exp(-alpha * delta_sum).
double dispersion_score(double delta_sum, double alpha);
/// Cross-sheet deltas must already be excluded.
DispersionResult dispersion(std::span<const Delta> deltas, const DispersionConfig& cfg);

struct Spans {
  int col_span = 0;
  int row_span = 0;
  bool operator==(const Spans&) const = default;
};
Spans spans(std::span<const Delta> deltas);

bool mixed_axis(std::span<const Delta> deltas);

/// Atomic boolean predicates: comparisons, non-logical arguments of
/// AND/OR/NOT, and a bare IF condition.
int decision_count(const FormulaAst& ast);

/// `refs` are the cell's own resolved references.
CellMetrics formula_metrics(const Cell& cell, std::span<const ResolvedReference> refs,
                            const DispersionConfig& cfg);

// ---------------------------------------------------------------------------
// Range linkage

enum class LinkageStyle { kAbsolute, kRelative };
enum class Verdict { kOk, kViolation };

std::string_view to_string(LinkageStyle style);
std::string_view to_string(Verdict verdict);

struct RangeLinkageFinding {
  RangeRef source_range;  // A: bounding box of the cells referenced by the run
  RangeRef target_range;  // B: the copied-formula run
  int s = 0;              // cells each formula touches along the run axis
  LinkageStyle ref_style = LinkageStyle::kRelative;
  int expected_extent = 0;
  int actual_extent = 0;
  Verdict verdict = Verdict::kOk;
  bool vertical = true;
};

/// Finds runs of copied formulas (equal up to relative-reference shift, at
/// least two cells) and checks each range reference in them against the
/// absolute (extent = s) or relative (extent = run length + s - 1) rule.
/// Actual extent counts populated positions along the run axis.
std::vector<RangeLinkageFinding> check_range_linkage(const Workbook& wb);

// ---------------------------------------------------------------------------
// Modular structure

struct DataBindingTriple {
  std::string setter;    // P: sheet holding the cell
  CellAddress variable;  // Q
  std::string reader;    // R: sheet whose formula reads it

  bool operator==(const DataBindingTriple&) const = default;
};

struct ModularMetrics {
  std::vector<DataBindingTriple> triples;
  std::map<std::pair<std::string, std::string>, int> triple_count_by_pair;
  double unreferenced_data_pct = 0.0;
  /// Distinct sheets a sheet reads from.
  std::map<std::string, int> module_fan_in;
  /// Distinct sheets reading from a sheet.
  std::map<std::string, int> module_fan_out;
};

ModularMetrics modular_metrics(const Workbook& wb, const Resolution& resolution,
                               const CellGraph& g);
ModularMetrics modular_metrics(const Workbook& wb, const CellGraph& g);

}  // namespace cellgauge
