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

#include "cellgauge/workbook.hpp"

namespace cellgauge {

namespace {

RefStyle style_of(bool all_absolute, bool all_relative) {
  if (all_absolute) return RefStyle::kAbsolute;
  if (all_relative) return RefStyle::kRelative;
  return RefStyle::kMixed;
}

class Resolver {
 public:
  Resolver(const Workbook& wb, const Cell& cell, Resolution& out)
      : wb_(wb), from_(cell.address), out_(out) {}

  void walk(const AstNode& n) {
    switch (n.kind) {
      case NodeKind::kCellRef: {
        auto sheet = target_sheet(n.ref.sheet, n);
        if (!sheet) return;
        out_.references.push_back(
            {from_, CellAddress{*sheet, n.ref.column, n.ref.row}, false,
             style_of(n.ref.col_absolute && n.ref.row_absolute,
                      !n.ref.col_absolute && !n.ref.row_absolute)});
        return;
      }
      case NodeKind::kRangeRef: {
        auto sheet = target_sheet(n.range.start.sheet, n);
        if (!sheet) return;
        const CellRef& a = n.range.start;
        const CellRef& b = n.range.end;
        RefStyle style = style_of(a.col_absolute && a.row_absolute && b.col_absolute && b.row_absolute,
                                  !a.col_absolute && !a.row_absolute && !b.col_absolute &&
                                      !b.row_absolute);
        for (int row = a.row; row <= b.row; ++row) {
          for (int col = a.column; col <= b.column; ++col) {
            out_.references.push_back({from_, CellAddress{*sheet, col, row}, true, style});
          }
        }
        return;
      }
      default:
        for (const AstNode& c : n.children) walk(c);
    }
  }

 private:
  std::optional<std::string> target_sheet(const std::optional<std::string>& written,
                                          const AstNode& n) {
    if (!written) return from_.sheet;
    if (auto idx = wb_.sheet_index(*written)) return wb_.sheets()[*idx].name;
    out_.dangling.push_back({from_, render_formula(n).substr(1)});
    return std::nullopt;
  }

  const Workbook& wb_;
  const CellAddress& from_;
  Resolution& out_;
};

}  // namespace

Resolution resolve_cell_references(const Workbook& wb, const Cell& cell) {
  Resolution out;
  if (const FormulaAst* ast = cell.formula()) Resolver(wb, cell, out).walk(ast->root);
  return out;
}

Resolution resolve_references(const Workbook& wb) {
  Resolution out;
  wb.for_each_cell([&](const Cell& cell) {
    if (const FormulaAst* ast = cell.formula()) Resolver(wb, cell, out).walk(ast->root);
  });
  return out;
}

std::variant<Delta, CrossSheet> reference_delta(const ResolvedReference& ref) {
  if (ref.from.sheet != ref.to.sheet) return CrossSheet{};
  return Delta{ref.to.column - ref.from.column, ref.to.row - ref.from.row};
}

}  // namespace cellgauge
