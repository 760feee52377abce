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

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace cellgauge {

inline constexpr int kMaxColumn = 16384;   // XFD
inline constexpr int kMaxRow = 1048576;

/// A1-style reference as written in a formula. Columns and rows are 1-based.
struct CellRef {
  std::optional<std::string> sheet;
  int column = 1;
  int row = 1;
  bool col_absolute = false;
  bool row_absolute = false;

  bool operator==(const CellRef&) const = default;
};

/// Rectangular range; both corners share the start's sheet.
struct RangeRef {
  CellRef start;
  CellRef end;

  int width() const { return end.column - start.column + 1; }
  int height() const { return end.row - start.row + 1; }
  bool operator==(const RangeRef&) const = default;
};

/// Concrete cell location in a workbook, independent of how it was written.
struct CellAddress {
  std::string sheet;
  int column = 1;
  int row = 1;

  bool operator==(const CellAddress&) const = default;
  // Row-major within a sheet: A1, B1, ..., A2.
  std::strong_ordering operator<=>(const CellAddress& other) const {
    if (auto c = sheet <=> other.sheet; c != 0) return c;
    if (auto c = row <=> other.row; c != 0) return c;
    return column <=> other.column;
  }
};

struct CellAddressHash {
  std::size_t operator()(const CellAddress& a) const noexcept {
    std::size_t h = std::hash<std::string>{}(a.sheet);
    h ^= (static_cast<std::size_t>(a.column) * 0x9E3779B97F4A7C15ULL) + (h << 6) + (h >> 2);
    h ^= (static_cast<std::size_t>(a.row) * 0xC2B2AE3D27D4EB4FULL) + (h << 6) + (h >> 2);
    return h;
  }
};

/// Bijective base-26 column name: 1 -> "A", 26 -> "Z", 27 -> "AA".
std::string column_name(int column);
/// Inverse of column_name; nullopt for non-letters or columns past XFD.
std::optional<int> parse_column(std::string_view letters);

/// Sheet name as it must appear before "!" (quoted when needed).
std::string quote_sheet_name(std::string_view sheet);

std::string render_ref(const CellRef& ref);
std::string render_range(const RangeRef& range);
/// "Sheet!A1" form; the sheet name is quoted when needed.
std::string render_address(const CellAddress& address);

/// Parses "A1", "$B$7" or "Data!C3" / "'My Sheet'!C3". Whole-text match only.
std::optional<CellRef> parse_cell_ref(std::string_view text);

/// Orders the corners so start.column <= end.column and start.row <= end.row.
/// Absolute markers travel with their coordinate.
RangeRef normalize(RangeRef range);

}  // namespace cellgauge

namespace cellgauge::detail {

struct A1Match {
  CellRef ref;
  std::size_t length = 0;
};

/// Matches `$?LETTERS$?DIGITS` starting at `pos` (no sheet qualifier).
/// Does not check what follows the match.
std::optional<A1Match> match_a1(std::string_view text, std::size_t pos);

}  // namespace cellgauge::detail
