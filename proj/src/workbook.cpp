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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "cellgauge/errors.hpp"

namespace cellgauge {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::optional<double> parse_number(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

const FormulaAst* Cell::formula() const {
  if (const auto* f = std::get_if<FormulaContent>(&content)) return &f->ast;
  return nullptr;
}

const Cell* Sheet::find(int column, int row) const {
  auto it = cells.find({row, column});
  return it == cells.end() ? nullptr : &it->second;
}

Sheet& Workbook::add_sheet(std::string name) {
  if (name.empty()) throw FormatError("sheet name must not be empty");
  if (sheet_index(name)) throw FormatError("duplicate sheet name '" + name + "'");
  sheets_.push_back(Sheet{std::move(name), {}});
  return sheets_.back();
}

std::optional<std::size_t> Workbook::sheet_index(std::string_view name) const {
  std::string key = upper(name);
  for (std::size_t i = 0; i < sheets_.size(); ++i) {
    if (upper(sheets_[i].name) == key) return i;
  }
  return std::nullopt;
}

const Cell* Workbook::find(const CellAddress& address) const {
  auto idx = sheet_index(address.sheet);
  if (!idx) return nullptr;
  return sheets_[*idx].find(address.column, address.row);
}

std::size_t Workbook::cell_count() const {
  std::size_t n = 0;
  for (const Sheet& s : sheets_) n += s.cells.size();
  return n;
}

Sheet& Workbook::sheet_for_write(std::string_view name) {
  auto idx = sheet_index(name);
  if (!idx) throw FormatError("unknown sheet '" + std::string(name) + "'");
  return sheets_[*idx];
}

void Workbook::put(Sheet& sheet, int column, int row, CellContent content) {
  if (column < 1 || column > kMaxColumn || row < 1 || row > kMaxRow) {
    throw FormatError("cell coordinates out of range");
  }
  if (std::holds_alternative<EmptyContent>(content)) {
    sheet.cells.erase({row, column});
    return;
  }
  Cell cell{CellAddress{sheet.name, column, row}, std::move(content)};
  sheet.cells.insert_or_assign({row, column}, std::move(cell));
}

void Workbook::set_text(std::string_view sheet, int column, int row, std::string_view text) {
  Sheet& s = sheet_for_write(sheet);
  if (text.empty()) {
    put(s, column, row, EmptyContent{});
    return;
  }
  if (text.front() == '=') {
    try {
      put(s, column, row, FormulaContent{parse_formula(text)});
    } catch (const SyntaxError& e) {
      warnings_.push_back({std::string(kFormulaError),
                           render_address(CellAddress{s.name, column, row}), e.what()});
      put(s, column, row, DataContent{std::string(text)});
    }
    return;
  }
  if (auto number = parse_number(text)) {
    put(s, column, row, DataContent{*number});
    return;
  }
  std::string up = upper(text);
  if (up == "TRUE" || up == "FALSE") {
    put(s, column, row, DataContent{up == "TRUE"});
    return;
  }
  put(s, column, row, DataContent{std::string(text)});
}

void Workbook::set_text(std::string_view sheet, std::string_view a1, std::string_view text) {
  auto ref = parse_cell_ref(a1);
  if (!ref || ref->sheet) throw FormatError("invalid cell address '" + std::string(a1) + "'");
  set_text(sheet, ref->column, ref->row, text);
}

void Workbook::set_value(std::string_view sheet, int column, int row, CellValue value) {
  put(sheet_for_write(sheet), column, row, DataContent{std::move(value)});
}

void Workbook::set_formula(std::string_view sheet, int column, int row, std::string_view formula) {
  Sheet& s = sheet_for_write(sheet);
  put(s, column, row, FormulaContent{parse_formula(formula)});
}

std::string_view to_string(RefStyle style) {
  switch (style) {
    case RefStyle::kAbsolute:
      return "absolute";
    case RefStyle::kRelative:
      return "relative";
    case RefStyle::kMixed:
      return "mixed";
  }
  return "relative";
}

}  // namespace cellgauge
