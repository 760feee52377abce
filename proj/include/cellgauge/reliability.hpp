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

#include "cellgauge/cell_ref.hpp"
#include "cellgauge/graph.hpp"
#include "cellgauge/metrics.hpp"

namespace cellgauge {

struct ComplexityWeights {
  double tokens = 1.0;
  double depth = 1.0;
  double dispersion = 1.0;
  double decisions = 1.0;
  double span = 1.0;
};

struct ReliabilityConfig {
  double base_cer = 0.02;
  ComplexityWeights weights;
  double data_cell_factor = 0.25;
  double cap = 0.25;

  /// Throws DomainError when a field is outside its range.
  void validate() const;
};

struct CascadeReliability {
  CellAddress terminal;
  int n = 0;
  double uniform_e = 0.0;
  double adjusted_e = 0.0;
  std::map<CellAddress, double> per_cell_rates;
};

/// 1 - (1 - e)^n. Throws DomainError unless 0 <= e < 1 and n >= 0.
double bottom_line_error_rate(double e, int n);

/// Cell error rate scaled by the cell's complexity: data cells get
/// base_cer * data_cell_factor; formula cells get
/// min(cap, base_cer * (1 + c)) with
///   c = w_tokens * (N1 + N2) / 10 + w_depth * (depth - 1) + w_dispersion * DR
///     + w_decisions * decisions + w_span * (col_span + row_span) / 20.
double adjusted_cell_rate(const CellMetrics& m, const ReliabilityConfig& cfg);

/// Cells missing from `metrics` (e.g. empty referenced cells) count as data.
CascadeReliability cascade_reliability(const CascadeStats& stats,
                                       const std::map<CellAddress, CellMetrics>& metrics,
                                       const ReliabilityConfig& cfg);

}  // namespace cellgauge
