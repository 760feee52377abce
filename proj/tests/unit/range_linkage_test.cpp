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

#include <gtest/gtest.h>

#include "support/builders.hpp"

namespace cellgauge {
namespace {

Workbook column_run(int data_rows, int run_length, const std::string& (*formula)(int)) {
  Workbook wb;
  wb.add_sheet("Sheet1");
  for (int r = 1; r <= data_rows; ++r) wb.set_value("Sheet1", 1, r, static_cast<double>(r));
  for (int r = 1; r <= run_length; ++r) wb.set_formula("Sheet1", 2, r, formula(r));
  return wb;
}

const std::string& absolute_sum(int) {
  static const std::string f = "=SUM($A$1:$A$3)";
  return f;
}

const std::string& relative_sum(int r) {
  static std::string f;
  f = "=SUM(A" + std::to_string(r) + ":A" + std::to_string(r + 1) + ")";
  return f;
}

TEST(RangeLinkage, AbsoluteOk) {
  auto findings = check_range_linkage(column_run(3, 5, absolute_sum));
  ASSERT_EQ(findings.size(), 1u);
  const auto& f = findings[0];
  EXPECT_EQ(f.ref_style, LinkageStyle::kAbsolute);
  EXPECT_EQ(f.s, 3);
  EXPECT_EQ(f.expected_extent, 3);
  EXPECT_EQ(f.actual_extent, 3);
  EXPECT_EQ(f.verdict, Verdict::kOk);
  EXPECT_TRUE(f.vertical);
  EXPECT_EQ(render_range(f.target_range), "Sheet1!B1:B5");
  EXPECT_EQ(render_range(f.source_range), "Sheet1!$A$1:$A$3");
}

TEST(RangeLinkage, AbsoluteMissingSourceCellIsViolation) {
  auto findings = check_range_linkage(column_run(2, 5, absolute_sum));
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].expected_extent, 3);
  EXPECT_EQ(findings[0].actual_extent, 2);
  EXPECT_EQ(findings[0].verdict, Verdict::kViolation);
}

TEST(RangeLinkage, RelativeOk) {
  auto findings = check_range_linkage(column_run(6, 5, relative_sum));
  ASSERT_EQ(findings.size(), 1u);
  const auto& f = findings[0];
  EXPECT_EQ(f.ref_style, LinkageStyle::kRelative);
  EXPECT_EQ(f.s, 2);
  EXPECT_EQ(f.expected_extent, 6);
  EXPECT_EQ(f.actual_extent, 6);
  EXPECT_EQ(f.verdict, Verdict::kOk);
  EXPECT_EQ(render_range(f.source_range), "Sheet1!A1:A6");
}

TEST(RangeLinkage, RelativeOffByOneIsViolation) {
  auto findings = check_range_linkage(column_run(5, 5, relative_sum));
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(findings[0].expected_extent, 6);
  EXPECT_EQ(findings[0].actual_extent, 5);
  EXPECT_EQ(findings[0].verdict, Verdict::kViolation);
}

TEST(RangeLinkage, HorizontalRun) {
  Workbook wb;
  wb.add_sheet("Sheet1");
  for (int c = 1; c <= 4; ++c) wb.set_value("Sheet1", c, 1, 1.0);
  for (int c = 1; c <= 3; ++c) {
    wb.set_formula("Sheet1", c, 2, "=SUM(" + column_name(c) + "1:" + column_name(c + 1) + "1)");
  }
  auto findings = check_range_linkage(wb);
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_FALSE(findings[0].vertical);
  EXPECT_EQ(findings[0].s, 2);
  EXPECT_EQ(findings[0].expected_extent, 4);
  EXPECT_EQ(findings[0].verdict, Verdict::kOk);
}

TEST(RangeLinkage, SingleFormulaIsNotARun) {
  EXPECT_TRUE(check_range_linkage(column_run(6, 1, relative_sum)).empty());
}

TEST(RangeLinkage, DifferentFormulasBreakTheRun) {
  Workbook wb = column_run(6, 2, relative_sum);
  wb.set_formula("Sheet1", 2, 3, "=MAX(A3:A4)");
  auto findings = check_range_linkage(wb);
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_EQ(render_range(findings[0].target_range), "Sheet1!B1:B2");
}

TEST(RangeLinkage, NoRangesNoFindings) {
  auto wb = testing::book({{"A1", "1"}, {"A2", "2"}, {"B1", "=A1*2"}, {"B2", "=A2*2"}});
  EXPECT_TRUE(check_range_linkage(wb).empty());
}

TEST(RangeLinkage, VerdictMatchesExtents) {
  for (int data = 1; data <= 8; ++data) {
    for (const auto& f : check_range_linkage(column_run(data, 5, relative_sum))) {
      EXPECT_EQ(f.verdict == Verdict::kOk, f.expected_extent == f.actual_extent);
    }
  }
}

}  // namespace
}  // namespace cellgauge
