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

#include "cellgauge/cell_ref.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace cellgauge {

namespace {

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

bool sheet_needs_quotes(std::string_view sheet) {
  if (sheet.empty()) return true;
  if (is_digit(sheet.front())) return true;
  for (char c : sheet) {
    if (!(is_letter(c) || is_digit(c) || c == '_' || c == '.')) return true;
  }
  // A bare name that itself reads as a cell reference would be ambiguous.
  if (auto m = detail::match_a1(sheet, 0); m && m->length == sheet.size()) return true;
  return false;
}

}  // namespace

std::string column_name(int column) {
  std::string out;
  while (column > 0) {
    int rem = (column - 1) % 26;
    out.push_back(static_cast<char>('A' + rem));
    column = (column - 1) / 26;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<int> parse_column(std::string_view letters) {
  if (letters.empty() || letters.size() > 3) return std::nullopt;
  int value = 0;
  for (char c : letters) {
    if (!is_letter(c)) return std::nullopt;
    value = value * 26 + (std::toupper(static_cast<unsigned char>(c)) - 'A' + 1);
  }
  if (value > kMaxColumn) return std::nullopt;
  return value;
}

std::string quote_sheet_name(std::string_view sheet) {
  if (!sheet_needs_quotes(sheet)) return std::string(sheet);
  std::string out = "'";
  for (char c : sheet) {
    out.push_back(c);
    if (c == '\'') out.push_back('\'');
  }
  out.push_back('\'');
  return out;
}

std::string render_ref(const CellRef& ref) {
  std::string out;
  if (ref.sheet) {
    out += quote_sheet_name(*ref.sheet);
    out += '!';
  }
  if (ref.col_absolute) out += '$';
  out += column_name(ref.column);
  if (ref.row_absolute) out += '$';
  out += std::to_string(ref.row);
  return out;
}

std::string render_range(const RangeRef& range) {
  CellRef end = range.end;
  end.sheet.reset();
  return render_ref(range.start) + ":" + render_ref(end);
}

std::string render_address(const CellAddress& address) {
  return quote_sheet_name(address.sheet) + "!" + column_name(address.column) +
         std::to_string(address.row);
}

std::optional<CellRef> parse_cell_ref(std::string_view text) {
  std::optional<std::string> sheet;
  std::size_t pos = 0;
  if (!text.empty() && text.front() == '\'') {
    std::string name;
    pos = 1;
    bool closed = false;
    while (pos < text.size()) {
      if (text[pos] == '\'') {
        if (pos + 1 < text.size() && text[pos + 1] == '\'') {
          name.push_back('\'');
          pos += 2;
          continue;
        }
        closed = true;
        ++pos;
        break;
      }
      name.push_back(text[pos++]);
    }
    if (!closed || pos >= text.size() || text[pos] != '!' || name.empty()) return std::nullopt;
    sheet = std::move(name);
    ++pos;
  } else if (auto bang = text.find('!'); bang != std::string_view::npos) {
    if (bang == 0) return std::nullopt;
    sheet = std::string(text.substr(0, bang));
    pos = bang + 1;
  }
  auto m = detail::match_a1(text, pos);
  if (!m || pos + m->length != text.size()) return std::nullopt;
  m->ref.sheet = std::move(sheet);
  return m->ref;
}

RangeRef normalize(RangeRef range) {
  CellRef& a = range.start;
  CellRef& b = range.end;
  if (a.column > b.column) {
    std::swap(a.column, b.column);
    std::swap(a.col_absolute, b.col_absolute);
  }
  if (a.row > b.row) {
    std::swap(a.row, b.row);
    std::swap(a.row_absolute, b.row_absolute);
  }
  b.sheet = a.sheet;
  return range;
}

namespace detail {

std::optional<A1Match> match_a1(std::string_view text, std::size_t pos) {
  std::size_t i = pos;
  A1Match m;
  if (i < text.size() && text[i] == '$') {
    m.ref.col_absolute = true;
    ++i;
  }
  std::size_t letters_begin = i;
  while (i < text.size() && is_letter(text[i])) ++i;
  auto column = parse_column(text.substr(letters_begin, i - letters_begin));
  if (!column) return std::nullopt;
  if (i < text.size() && text[i] == '$') {
    m.ref.row_absolute = true;
    ++i;
  }
  std::size_t digits_begin = i;
  long long row = 0;
  while (i < text.size() && is_digit(text[i])) {
    row = row * 10 + (text[i] - '0');
    if (row > kMaxRow) return std::nullopt;
    ++i;
  }
  if (i == digits_begin || row < 1 || text[digits_begin] == '0') return std::nullopt;
  m.ref.column = *column;
  m.ref.row = static_cast<int>(row);
  m.length = i - pos;
  return m;
}

}  // namespace detail

}  // namespace cellgauge
