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

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cellgauge/cell_ref.hpp"
#include "cellgauge/diagnostics.hpp"
#include "cellgauge/formula.hpp"

namespace cellgauge {

using CellValue = std::variant<double, std::string, bool>;

struct EmptyContent {
  bool operator==(const EmptyContent&) const = default;
};
struct DataContent {
  CellValue value;
  bool operator==(const DataContent&) const = default;
};
struct FormulaContent {
  FormulaAst ast;
  bool operator==(const FormulaContent& o) const { return ast.root == o.ast.root; }
};

using CellContent = std::variant<EmptyContent, DataContent, FormulaContent>;

struct Cell {
  CellAddress address;
  CellContent content;

  bool is_formula() const { return std::holds_alternative<FormulaContent>(content); }
  bool is_data() const { return std::holds_alternative<DataContent>(content); }
  /// Null unless the cell holds a formula.
  const FormulaAst* formula() const;

  bool operator==(const Cell&) const = default;
};

struct Sheet {
  std::string name;
  // Keyed by (row, column) so iteration is row-major.
  std::map<std::pair<int, int>, Cell> cells;

  const Cell* find(int column, int row) const;
  bool operator==(const Sheet&) const = default;
};

class Workbook {
 public:
  Workbook() = default;
  explicit Workbook(std::string source_path) : source_path_(std::move(source_path)) {}

  /// Appends an empty sheet. Throws FormatError on an empty or duplicate name.
  Sheet& add_sheet(std::string name);

  /// Stores text the way a user would type it: "=..." is a formula, numeric
  /// text a number, TRUE/FALSE a boolean, anything else a string. Formula text
  /// that fails to parse is kept as a string and recorded as a warning.
  /// Empty text clears the cell.
  void set_text(std::string_view sheet, int column, int row, std::string_view text);
  void set_text(std::string_view sheet, std::string_view a1, std::string_view text);
  void set_value(std::string_view sheet, int column, int row, CellValue value);
  /// Parses `formula` or throws SyntaxError.
  void set_formula(std::string_view sheet, int column, int row, std::string_view formula);

  const std::vector<Sheet>& sheets() const { return sheets_; }
  const std::string& source_path() const { return source_path_; }
  const std::vector<Warning>& warnings() const { return warnings_; }
  void add_warning(Warning w) { warnings_.push_back(std::move(w)); }

  /// Case-insensitive lookup, as spreadsheet applications do.
  std::optional<std::size_t> sheet_index(std::string_view name) const;
  const Cell* find(const CellAddress& address) const;
  std::size_t cell_count() const;

  /// Visits every non-empty cell in sheet order, then row-major.
  template <typename Fn>
  void for_each_cell(Fn&& fn) const {
    for (const Sheet& s : sheets_)
      for (const auto& [key, cell] : s.cells) fn(cell);
  }

  bool operator==(const Workbook&) const = default;

 private:
  Sheet& sheet_for_write(std::string_view name);
  void put(Sheet& sheet, int column, int row, CellContent content);

  std::vector<Sheet> sheets_;
  std::string source_path_;
  std::vector<Warning> warnings_;
};

enum class InputFormat { kAuto, kWorkbookDoc, kCsvGrid };

/// Picks the format from the file extension (.json, .csv). Throws FormatError.
InputFormat infer_format(const std::filesystem::path& path);

/// Reads and parses a workbook file; kAuto picks by extension (.json, .csv).
/// Throws IoError or FormatError. Per-cell formula errors become warnings.
Workbook load_workbook(const std::filesystem::path& path, InputFormat format = InputFormat::kAuto);

/// JSON document: {"sheets":[{"name":..., "cells":[{"ref":"A1","value":...} |
/// {"ref":"B2","formula":"=..."}]}]}. Unknown fields are rejected.
Workbook parse_workbook_document(std::string_view bytes, std::string source_path = {});

/// RFC 4180 grid loaded as a single sheet "Sheet1".
Workbook parse_csv_grid(std::string_view bytes, std::string source_path = {});

/// Reads a whole file into memory. Throws IoError.
std::string read_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Reference resolution

enum class RefStyle { kAbsolute, kRelative, kMixed };

struct ResolvedReference {
  CellAddress from;
  CellAddress to;
  bool via_range = false;
  RefStyle ref_style = RefStyle::kRelative;

  bool operator==(const ResolvedReference&) const = default;
};

/// A reference whose target sheet does not exist; excluded from the graph.
struct DanglingReference {
  CellAddress from;
  std::string target;  // reference text as written

  bool operator==(const DanglingReference&) const = default;
};

struct Resolution {
  std::vector<ResolvedReference> references;
  std::vector<DanglingReference> dangling;
};

/// One entry per cell reference and per cell of every range (row-major),
/// in formula pre-order. Duplicates are kept.
Resolution resolve_references(const Workbook& wb);
Resolution resolve_cell_references(const Workbook& wb, const Cell& cell);

struct Delta {
  int dx = 0;
  int dy = 0;
  bool operator==(const Delta&) const = default;
};
struct CrossSheet {
  bool operator==(const CrossSheet&) const = default;
};

std::variant<Delta, CrossSheet> reference_delta(const ResolvedReference& ref);

std::string_view to_string(RefStyle style);

}  // namespace cellgauge
