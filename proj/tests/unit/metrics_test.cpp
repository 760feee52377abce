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

#include "cellgauge/errors.hpp"
#include "cellgauge/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles/nl_corpus.hpp"
#include "support/builders.hpp"

namespace cellgauge {
namespace {

using testing::at;
using testing::book;

CellMetrics metrics_of(const Workbook& wb, std::string_view a, DispersionConfig cfg = {}) {
  const Cell* c = wb.find(at(a));
  auto refs = resolve_cell_references(wb, *c).references;
  return formula_metrics(*c, refs, cfg);
}

int decisions(std::string_view f) { return decision_count(parse_formula(f)); }

TEST(Dispersion, ReferenceTable) {
  const std::pair<double, double> table[] = {{10, 0.0952},  {20, 0.1813},  {50, 0.3935},
                                             {100, 0.6321}, {150, 0.7769}, {200, 0.8647},
                                             {300, 0.9502}};
  for (auto [delta, dr] : table) EXPECT_NEAR(dispersion_score(delta, 0.01), dr, 5e-5) << delta;
}

TEST(Dispersion, ZeroDelta) { EXPECT_EQ(dispersion_score(0, 0.01), 0.0); }

TEST(Dispersion, Modes) {
  std::vector<Delta> d{{3, -4}, {0, 2}, {-1, 0}};
  auto product = dispersion(d, {0.01, DispersionMode::kProduct});
  auto manhattan = dispersion(d, {0.01, DispersionMode::kManhattan});
  auto euclid = dispersion(d, {0.01, DispersionMode::kEuclidean});
  EXPECT_DOUBLE_EQ(product.delta_sum, 12);
  EXPECT_DOUBLE_EQ(manhattan.delta_sum, 7 + 2 + 1);
  EXPECT_DOUBLE_EQ(euclid.delta_sum, 5 + 2 + 1);
  EXPECT_DOUBLE_EQ(product.dispersion, 1 - std::exp(-0.12));
  EXPECT_DOUBLE_EQ(manhattan.dispersion, 1 - std::exp(-0.10));
}

TEST(Dispersion, SameRowOrColumnByMode) {
  std::vector<Delta> d{{0, 5}, {-3, 0}};
  EXPECT_EQ(dispersion(d, {0.01, DispersionMode::kProduct}).dispersion, 0.0);
  EXPECT_GT(dispersion(d, {0.01, DispersionMode::kManhattan}).dispersion, 0.0);
  EXPECT_GT(dispersion(d, {0.01, DispersionMode::kEuclidean}).dispersion, 0.0);
}

TEST(DispersionProperty, MonotoneAndBounded) {
  double prev = -1;
  for (double delta = 0; delta <= 3000; delta += 7) {
    double dr = dispersion_score(delta, 0.01);
    EXPECT_GT(dr, prev);
    EXPECT_GE(dr, 0);
    EXPECT_LT(dr, 1);
    prev = dr;
  }
  prev = -1;
  for (double alpha = 0.001; alpha < 0.1; alpha += 0.001) {
    double dr = dispersion_score(50, alpha);
    EXPECT_GT(dr, prev);
    prev = dr;
  }
  EXPECT_NEAR(dispersion_score(1e6, 0.01), 1.0, 1e-12);
}

TEST(DispersionConfig, Validation) {
  EXPECT_THROW((DispersionConfig{0.0, DispersionMode::kProduct}.validate()), DomainError);
  EXPECT_THROW((DispersionConfig{-1.0, DispersionMode::kProduct}.validate()), DomainError);
  EXPECT_THROW((DispersionConfig{NAN, DispersionMode::kProduct}.validate()), DomainError);
  EXPECT_NO_THROW(DispersionConfig{}.validate());
  EXPECT_EQ(parse_dispersion_mode("euclidean"), DispersionMode::kEuclidean);
  EXPECT_EQ(to_string(DispersionMode::kManhattan), "manhattan");
  EXPECT_THROW(parse_dispersion_mode("hamming"), DomainError);
}

TEST(Spans, Examples) {
  std::vector<Delta> two{{3, -2}, {-1, 4}};
  EXPECT_EQ(spans(two), (Spans{4, 6}));
  std::vector<Delta> one{{0, 7}};
  EXPECT_EQ(spans(one), (Spans{0, 7}));
  EXPECT_EQ(spans({}), (Spans{0, 0}));
  std::vector<Delta> negative{{-5, -1}};
  EXPECT_EQ(spans(negative), (Spans{5, 1}));
}

TEST(SpansProperty, PermutationInvariant) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> v(-50, 50);
  for (int i = 0; i < 200; ++i) {
    std::vector<Delta> d(8);
    for (auto& x : d) x = {v(rng), v(rng)};
    Spans s = spans(d);
    std::shuffle(d.begin(), d.end(), rng);
    EXPECT_EQ(spans(d), s);
  }
}

TEST(MixedAxis, MatchesDefinition) {
  std::vector<Delta> mixed{{0, 3}, {-2, 0}};
  std::vector<Delta> column_only{{0, 3}, {0, -1}};
  std::vector<Delta> diagonal{{1, 1}, {0, 2}};
  EXPECT_TRUE(mixed_axis(mixed));
  EXPECT_FALSE(mixed_axis(column_only));
  EXPECT_FALSE(mixed_axis(diagonal));
  std::mt19937 rng(6);
  std::uniform_int_distribution<int> v(-2, 2);
  for (int i = 0; i < 500; ++i) {
    std::vector<Delta> d(4);
    for (auto& x : d) x = {v(rng), v(rng)};
    bool col = std::any_of(d.begin(), d.end(), [](Delta x) { return x.dx == 0 && x.dy != 0; });
    bool row = std::any_of(d.begin(), d.end(), [](Delta x) { return x.dx != 0 && x.dy == 0; });
    EXPECT_EQ(mixed_axis(d), col && row);
  }
}

TEST(DecisionCount, Examples) {
  EXPECT_EQ(decisions("=A1+B1"), 0);
  EXPECT_EQ(decisions("=IF(A1>0,1,2)"), 1);
  EXPECT_EQ(decisions("=IF(AND(A1>0,OR(B1<5,C1=2)),1,2)"), 3);
}

TEST(DecisionCount, AtomicPredicates) {
  EXPECT_EQ(decisions("=IF(A1,1,2)"), 1);
  EXPECT_EQ(decisions("=IF(TRUE,1,2)"), 1);
  EXPECT_EQ(decisions("=AND(A1,B1,C1>2)"), 3);
  EXPECT_EQ(decisions("=NOT(A1)"), 1);
  EXPECT_EQ(decisions("=IF(NOT(A1>1),1,2)"), 1);
  EXPECT_EQ(decisions("=IF(AND(A1,B1),1,2)"), 2);
  EXPECT_EQ(decisions("=(A1>1)+(B1<2)"), 2);
}

TEST(FormulaMetrics, FlatFormula) {
  auto m = metrics_of(book({{"A1", "1"}, {"B1", "2"}, {"C1", "=A1+B1"}}), "C1");
  EXPECT_TRUE(m.is_formula);
  EXPECT_EQ(m.n_operators, 1);
  EXPECT_EQ(m.n_operands, 2);
  EXPECT_EQ(m.depth_of_nesting, 1);
  EXPECT_EQ(m.avg_nesting_level, Rational(1));
  EXPECT_EQ(m.decision_count, 0);
  EXPECT_EQ(m.n_references, 2);
  EXPECT_EQ(m.col_span, 2);
  EXPECT_EQ(m.row_span, 0);
  EXPECT_EQ(m.dispersion, 0.0);
}

TEST(FormulaMetrics, NestedFormula) {
  auto m = metrics_of(book({{"D1", "=SUM(A1, MAX(B1,C1))"}}), "D1");
  EXPECT_EQ(m.n_operators, 2);
  EXPECT_EQ(m.n_operands, 3);
  EXPECT_EQ(m.depth_of_nesting, 3);
  EXPECT_EQ(m.avg_nesting_level, Rational(11, 5));
}

TEST(FormulaMetrics, DataCellAllZero) {
  auto wb = book({{"A1", "5"}});
  auto m = formula_metrics(*wb.find(at("A1")), {}, {});
  EXPECT_FALSE(m.is_formula);
  EXPECT_EQ(m.n_operators, 0);
  EXPECT_EQ(m.n_operands, 0);
  EXPECT_EQ(m.depth_of_nesting, 0);
  EXPECT_EQ(m.avg_nesting_level, Rational(0));
  EXPECT_EQ(m.n_references, 0);
  EXPECT_EQ(m.address, at("A1"));
}

TEST(FormulaMetrics, RangesExpandForReferencesAndDispersion) {
  auto m = metrics_of(book({{"C5", "=SUM(A1:B2)+A1"}}), "C5");
  EXPECT_EQ(m.n_operands, 2);
  EXPECT_EQ(m.n_references, 5);
  // Deltas: (-2,-4) (-1,-4) (-2,-3) (-1,-3) and A1 again (-2,-4).
  EXPECT_DOUBLE_EQ(m.delta_sum, 8 + 4 + 6 + 3 + 8);
  EXPECT_NEAR(m.dispersion, 1 - std::exp(-0.29), 1e-15);
  EXPECT_EQ(m.col_span, 2);
  EXPECT_EQ(m.row_span, 4);
  EXPECT_EQ(m.forward_ref_count, 0);
}

TEST(FormulaMetrics, CrossSheetExcludedFromDispersion) {
  Workbook wb;
  wb.add_sheet("In");
  wb.add_sheet("Out");
  testing::fill(wb, "In", {{"Z99", "1"}});
  testing::fill(wb, "Out", {{"B2", "=In!Z99+A1"}});
  auto m = metrics_of(wb, "Out!B2");
  EXPECT_EQ(m.cross_sheet_ref_count, 1);
  EXPECT_EQ(m.n_references, 2);
  EXPECT_DOUBLE_EQ(m.delta_sum, 1);
  EXPECT_EQ(m.col_span, 1);
  EXPECT_EQ(m.row_span, 1);
}

TEST(FormulaMetrics, ForwardReferencesAndMixedAxis) {
  auto m = metrics_of(book({{"B2", "=B5+D2+A1"}}), "B2");
  EXPECT_EQ(m.forward_ref_count, 2);
  EXPECT_TRUE(m.mixed_axis_flag);
}

TEST(FormulaMetricsProperty, NlAvgBounds) {
  for (const auto& c : oracle::kNlCorpus) {
    Workbook wb;
    wb.add_sheet("Sheet1");
    wb.add_sheet("Data");
    wb.set_formula("Sheet1", 26, 100, c.formula);
    auto m = metrics_of(wb, "Z100");
    EXPECT_EQ(m.avg_nesting_level, Rational(c.level_sum, c.token_count)) << c.formula;
    EXPECT_GE(m.avg_nesting_level, Rational(1));
    EXPECT_LE(m.avg_nesting_level, Rational(m.depth_of_nesting));
    EXPECT_EQ(m.n_operators + m.n_operands, c.token_count);
    EXPECT_EQ(m.dispersion == 0.0, m.delta_sum == 0.0);
  }
}

}  // namespace
}  // namespace cellgauge
