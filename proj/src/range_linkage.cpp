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

#include <algorithm>
#include <charconv>
#include <set>

#include "cellgauge/metrics.hpp"

namespace cellgauge {

namespace {

// Reference coordinates relative to the formula cell unless absolute, so
// copies of one formula share a signature.
void ref_signature(const CellRef& r, const CellAddress& at, std::string& out) {
  if (r.sheet) {
    out += *r.sheet;
    out += '!';
  }
  out += r.col_absolute ? "C" + std::to_string(r.column) : "c" + std::to_string(r.column - at.column);
  out += r.row_absolute ? "R" + std::to_string(r.row) : "r" + std::to_string(r.row - at.row);
}

void signature(const AstNode& n, const CellAddress& at, std::string& out) {
  switch (n.kind) {
    case NodeKind::kNumber: {
      char buf[64];
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), n.number);
      out += 'N';
      out.append(buf, ec == std::errc() ? end : buf);
      break;
    }
    case NodeKind::kString:
      out += "S" + std::to_string(n.text.size()) + ":" + n.text;
      break;
    case NodeKind::kBoolean:
      out += n.boolean ? "T" : "F";
      break;
    case NodeKind::kCellRef:
      out += "<";
      ref_signature(n.ref, at, out);
      out += ">";
      break;
    case NodeKind::kRangeRef:
      out += "[";
      ref_signature(n.range.start, at, out);
      out += ":";
      ref_signature(n.range.end, at, out);
      out += "]";
      break;
    case NodeKind::kUnaryOp:
    case NodeKind::kBinaryOp:
    case NodeKind::kFunctionCall:
      out += n.kind == NodeKind::kFunctionCall ? "F" : "O";
      out += n.text;
      out += '(';
      for (const AstNode& c : n.children) {
        signature(c, at, out);
        out += ',';
      }
      out += ')';
      break;
  }
}

void collect_ranges(const AstNode& n, std::vector<const RangeRef*>& out) {
  if (n.kind == NodeKind::kRangeRef) out.push_back(&n.range);
  for (const AstNode& c : n.children) collect_ranges(c, out);
}

struct FormulaCell {
  const Cell* cell;
  std::string signature;
};

class LinkageChecker {
 public:
  LinkageChecker(const Workbook& wb, std::vector<RangeLinkageFinding>& out) : wb_(wb), out_(out) {}

  void check_sheet(const Sheet& sheet) {
    std::vector<FormulaCell> formulas;
    for (const auto& [key, cell] : sheet.cells) {
      if (const FormulaAst* ast = cell.formula()) {
        std::string sig;
        signature(ast->root, cell.address, sig);
        formulas.push_back({&cell, std::move(sig)});
      }
    }
    // Vertical runs: column-major order.
    std::sort(formulas.begin(), formulas.end(), [](const FormulaCell& a, const FormulaCell& b) {
      return std::pair(a.cell->address.column, a.cell->address.row) <
             std::pair(b.cell->address.column, b.cell->address.row);
    });
    scan_runs(sheet, formulas, true);
    std::sort(formulas.begin(), formulas.end(), [](const FormulaCell& a, const FormulaCell& b) {
      return std::pair(a.cell->address.row, a.cell->address.column) <
             std::pair(b.cell->address.row, b.cell->address.column);
    });
    scan_runs(sheet, formulas, false);
  }

 private:
  void scan_runs(const Sheet& sheet, const std::vector<FormulaCell>& ordered, bool vertical) {
    std::size_t i = 0;
    while (i < ordered.size()) {
      std::size_t j = i + 1;
      while (j < ordered.size() && continues(ordered[j - 1], ordered[j], vertical)) ++j;
      if (j - i >= 2) check_run(sheet, ordered, i, j, vertical);
      i = j;
    }
  }

  static bool continues(const FormulaCell& prev, const FormulaCell& next, bool vertical) {
    const CellAddress& a = prev.cell->address;
    const CellAddress& b = next.cell->address;
    bool adjacent = vertical ? (a.column == b.column && b.row == a.row + 1)
                             : (a.row == b.row && b.column == a.column + 1);
    return adjacent && prev.signature == next.signature;
  }

  void check_run(const Sheet& sheet, const std::vector<FormulaCell>& ordered, std::size_t begin,
                 std::size_t end, bool vertical) {
    const int run_length = static_cast<int>(end - begin);
    std::vector<std::vector<const RangeRef*>> ranges;
    for (std::size_t k = begin; k < end; ++k) {
      ranges.emplace_back();
      collect_ranges(ordered[k].cell->formula()->root, ranges.back());
    }
    const CellAddress& first = ordered[begin].cell->address;
    const CellAddress& last = ordered[end - 1].cell->address;

    for (std::size_t r = 0; r < ranges.front().size(); ++r) {
      const RangeRef& head = *ranges.front()[r];
      bool start_abs = vertical ? head.start.row_absolute : head.start.col_absolute;
      bool end_abs = vertical ? head.end.row_absolute : head.end.col_absolute;
      if (start_abs != end_abs) continue;  // expanding ranges follow neither rule

      const std::string& target_name = head.start.sheet ? *head.start.sheet : sheet.name;
      auto target_index = wb_.sheet_index(target_name);
      if (!target_index) continue;
      const Sheet& target = wb_.sheets()[*target_index];

      RangeLinkageFinding f;
      f.vertical = vertical;
      f.ref_style = start_abs ? LinkageStyle::kAbsolute : LinkageStyle::kRelative;
      f.s = vertical ? head.height() : head.width();
      f.expected_extent = start_abs ? f.s : run_length + f.s - 1;

      std::set<int> positions;
      int min_col = head.start.column, max_col = head.end.column;
      int min_row = head.start.row, max_row = head.end.row;
      for (const auto& cell_ranges : ranges) {
        const RangeRef& rr = *cell_ranges[r];
        min_col = std::min(min_col, rr.start.column);
        max_col = std::max(max_col, rr.end.column);
        min_row = std::min(min_row, rr.start.row);
        max_row = std::max(max_row, rr.end.row);
        int lo = vertical ? rr.start.row : rr.start.column;
        int hi = vertical ? rr.end.row : rr.end.column;
        for (int p = lo; p <= hi; ++p) {
          if (positions.count(p) != 0) continue;
          if (populated(target, rr, p, vertical)) positions.insert(p);
        }
      }
      f.actual_extent = static_cast<int>(positions.size());
      f.verdict = f.actual_extent == f.expected_extent ? Verdict::kOk : Verdict::kViolation;

      f.source_range = head;
      f.source_range.start.column = min_col;
      f.source_range.end.column = max_col;
      f.source_range.start.row = min_row;
      f.source_range.end.row = max_row;
      f.source_range.start.sheet = target.name;
      f.source_range.end.sheet = target.name;
      CellRef b_start{sheet.name, first.column, first.row, false, false};
      CellRef b_end{sheet.name, last.column, last.row, false, false};
      f.target_range = RangeRef{b_start, b_end};
      out_.push_back(std::move(f));
    }
  }

  // Whether any cell of `rr` at position p along the run axis holds content.
  static bool populated(const Sheet& target, const RangeRef& rr, int p, bool vertical) {
    int lo = vertical ? rr.start.column : rr.start.row;
    int hi = vertical ? rr.end.column : rr.end.row;
    for (int q = lo; q <= hi; ++q) {
      const Cell* c = vertical ? target.find(q, p) : target.find(p, q);
      if (c != nullptr) return true;
    }
    return false;
  }

  const Workbook& wb_;
  std::vector<RangeLinkageFinding>& out_;
};

}  // namespace

std::string_view to_string(LinkageStyle style) {
  return style == LinkageStyle::kAbsolute ? "absolute" : "relative";
}

std::string_view to_string(Verdict verdict) { return verdict == Verdict::kOk ? "ok" : "violation"; }

std::vector<RangeLinkageFinding> check_range_linkage(const Workbook& wb) {
  std::vector<RangeLinkageFinding> findings;
  LinkageChecker checker(wb, findings);
  for (const Sheet& sheet : wb.sheets()) checker.check_sheet(sheet);
  return findings;
}

}  // namespace cellgauge
