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

#include "cellgauge/reliability.hpp"

#include <algorithm>
#include <cmath>

#include "cellgauge/errors.hpp"

namespace cellgauge {

namespace {

bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void ReliabilityConfig::validate() const {
  if (!(base_cer >= 0.0 && base_cer < 1.0)) throw DomainError("base cell error rate must be in [0, 1)");
  if (!(cap > 0.0 && cap <= 1.0)) throw DomainError("rate cap must be in (0, 1]");
  if (cap < base_cer) throw DomainError("rate cap must not be below the base cell error rate");
  if (!non_negative(data_cell_factor)) throw DomainError("data cell factor must be non-negative");
  if (base_cer * data_cell_factor >= 1.0) throw DomainError("data cell error rate must stay below 1");
  const ComplexityWeights& w = weights;
  if (!non_negative(w.tokens) || !non_negative(w.depth) || !non_negative(w.dispersion) ||
      !non_negative(w.decisions) || !non_negative(w.span)) {
    throw DomainError("complexity weights must be non-negative");
  }
}

double bottom_line_error_rate(double e, int n) {
  if (!(e >= 0.0 && e < 1.0)) throw DomainError("cell error rate must be in [0, 1)");
  if (n < 0) throw DomainError("cell count must be non-negative");
  return -std::expm1(static_cast<double>(n) * std::log1p(-e));
}

double adjusted_cell_rate(const CellMetrics& m, const ReliabilityConfig& cfg) {
  if (!m.is_formula) return cfg.base_cer * cfg.data_cell_factor;
  const ComplexityWeights& w = cfg.weights;
  const double c = w.tokens * (m.n_operators + m.n_operands) / 10.0 +
                   w.depth * (m.depth_of_nesting - 1) + w.dispersion * m.dispersion +
                   w.decisions * m.decision_count + w.span * (m.col_span + m.row_span) / 20.0;
  return std::min(cfg.cap, cfg.base_cer * (1.0 + c));
}

CascadeReliability cascade_reliability(const CascadeStats& stats,
                                       const std::map<CellAddress, CellMetrics>& metrics,
                                       const ReliabilityConfig& cfg) {
  CascadeReliability out;
  out.terminal = stats.terminal;
  out.n = stats.cell_count;
  out.uniform_e = bottom_line_error_rate(cfg.base_cer, out.n);
  double log_survival = 0.0;
  for (const CellAddress& cell : stats.cells) {
    auto it = metrics.find(cell);
    double rate = it != metrics.end() ? adjusted_cell_rate(it->second, cfg)
                                      : cfg.base_cer * cfg.data_cell_factor;
    out.per_cell_rates.emplace(cell, rate);
    log_survival += std::log1p(-rate);
  }
  out.adjusted_e = -std::expm1(log_survival);
  return out;
}

}  // namespace cellgauge
