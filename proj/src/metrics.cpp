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

#include "cellgauge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "cellgauge/errors.hpp"

namespace cellgauge {

namespace {

bool is_logical_call(const AstNode& n) {
  return n.is_call("AND") || n.is_call("OR") || n.is_call("NOT");
}

int count_decisions(const AstNode& n) {
  int total = 0;
  if (n.is_comparison()) {
    total = 1;
  } else if (is_logical_call(n)) {
    for (const AstNode& arg : n.children) {
      if (!arg.is_comparison() && !is_logical_call(arg)) ++total;
    }
  } else if (n.is_call("IF") && !n.children.empty()) {
    const AstNode& condition = n.children.front();
    if (!condition.is_comparison() && !is_logical_call(condition)) ++total;
  }
  for (const AstNode& c : n.children) total += count_decisions(c);
  return total;
}

}  // namespace

std::string_view to_string(DispersionMode mode) {
  switch (mode) {
    case DispersionMode::kProduct:
      return "product";
    case DispersionMode::kManhattan:
      return "manhattan";
    case DispersionMode::kEuclidean:
      return "euclidean";
  }
  return "product";
}

DispersionMode parse_dispersion_mode(std::string_view name) {
  if (name == "product") return DispersionMode::kProduct;
  if (name == "manhattan") return DispersionMode::kManhattan;
  if (name == "euclidean") return DispersionMode::kEuclidean;
  throw DomainError("unknown dispersion mode '" + std::string(name) + "'");
}

void DispersionConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be a positive number");
}

double dispersion_score(double delta_sum, double alpha) { return -std::expm1(-alpha * delta_sum); }

DispersionResult dispersion(std::span<const Delta> deltas, const DispersionConfig& cfg) {
  double sum = 0.0;
  for (const Delta& d : deltas) {
    double dx = std::abs(d.dx);
    double dy = std::abs(d.dy);
    switch (cfg.mode) {
      case DispersionMode::kProduct:
        sum += dx * dy;
        break;
      case DispersionMode::kManhattan:
        sum += dx + dy;
        break;
      case DispersionMode::kEuclidean:
        sum += std::hypot(dx, dy);
        break;
    }
  }
  return {dispersion_score(sum, cfg.alpha), sum};
}

Spans spans(std::span<const Delta> deltas) {
  int max_dx = 0, min_dx = 0, max_dy = 0, min_dy = 0;
  for (const Delta& d : deltas) {
    max_dx = std::max(max_dx, d.dx);
    min_dx = std::min(min_dx, d.dx);
    max_dy = std::max(max_dy, d.dy);
    min_dy = std::min(min_dy, d.dy);
  }
  return {max_dx - min_dx, max_dy - min_dy};
}

bool mixed_axis(std::span<const Delta> deltas) {
  bool same_column = false;
  bool same_row = false;
  for (const Delta& d : deltas) {
    same_column = same_column || (d.dx == 0 && d.dy != 0);
    same_row = same_row || (d.dx != 0 && d.dy == 0);
  }
  return same_column && same_row;
}

int decision_count(const FormulaAst& ast) { return count_decisions(ast.root); }

CellMetrics formula_metrics(const Cell& cell, std::span<const ResolvedReference> refs,
                            const DispersionConfig& cfg) {
  CellMetrics m;
  m.address = cell.address;
  const FormulaAst* ast = cell.formula();
  if (ast == nullptr) return m;

  m.is_formula = true;
  BigCount level_sum = 0;
  for (const ClassifiedToken& t : classify_tokens(*ast)) {
    (t.kind == TokenKind::kOperator ? m.n_operators : m.n_operands) += 1;
    m.depth_of_nesting = std::max(m.depth_of_nesting, t.nesting_level);
    level_sum += t.nesting_level;
  }
  const int tokens = m.n_operators + m.n_operands;
  if (tokens > 0) m.avg_nesting_level = Rational(level_sum, BigCount(tokens));
  m.decision_count = decision_count(*ast);

  std::vector<Delta> deltas;
  deltas.reserve(refs.size());
  for (const ResolvedReference& r : refs) {
    ++m.n_references;
    auto d = reference_delta(r);
    if (const Delta* delta = std::get_if<Delta>(&d)) {
      deltas.push_back(*delta);
      if (delta->dx > 0 || delta->dy > 0) ++m.forward_ref_count;
    } else {
      ++m.cross_sheet_ref_count;
    }
  }
  auto dr = dispersion(deltas, cfg);
  m.dispersion = dr.dispersion;
  m.delta_sum = dr.delta_sum;
  Spans s = spans(deltas);
  m.col_span = s.col_span;
  m.row_span = s.row_span;
  m.mixed_axis_flag = mixed_axis(deltas);
  return m;
}

}  // namespace cellgauge
