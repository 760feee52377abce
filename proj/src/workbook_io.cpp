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

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cellgauge/errors.hpp"
#include "cellgauge/workbook.hpp"

namespace cellgauge {

namespace {

using nlohmann::json;

void reject_unknown(const json& object, std::initializer_list<std::string_view> allowed,
                    const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw FormatError("unknown field '" + key + "' in " + where);
  }
}

// Splits RFC 4180 text into records of fields.
std::vector<std::vector<std::string>> split_csv(std::string_view bytes) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool record_has_content = false;
  std::size_t line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    record_has_content = false;
  };

  for (std::size_t i = 0; i < bytes.size(); ++i) {
    char c = bytes[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < bytes.size() && bytes[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (field_was_quoted && c != ',' && c != '\n' && c != '\r') {
      throw FormatError("unexpected character after closing quote on line " +
                        std::to_string(line));
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          throw FormatError("quote inside unquoted field on line " + std::to_string(line));
        }
        in_quotes = true;
        field_was_quoted = true;
        record_has_content = true;
        break;
      case ',':
        end_field();
        record_has_content = true;
        break;
      case '\r':
        if (i + 1 < bytes.size() && bytes[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field.push_back(c);
        record_has_content = true;
        break;
    }
  }
  if (in_quotes) throw FormatError("unterminated quoted field");
  if (record_has_content || !field.empty()) end_record();
  return records;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError("cannot read '" + path.string() + "': not a readable file");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return buf.str();
}

Workbook parse_workbook_document(std::string_view bytes, std::string source_path) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("workbook document must be a JSON object");
  reject_unknown(doc, {"sheets"}, "workbook");
  auto sheets = doc.find("sheets");
  if (sheets == doc.end() || !sheets->is_array()) {
    throw FormatError("workbook document needs a \"sheets\" array");
  }

  Workbook wb(std::move(source_path));
  for (const json& sheet : *sheets) {
    if (!sheet.is_object()) throw FormatError("sheet entries must be objects");
    reject_unknown(sheet, {"name", "cells"}, "sheet");
    auto name = sheet.find("name");
    if (name == sheet.end() || !name->is_string()) throw FormatError("sheet needs a string \"name\"");
    const std::string sheet_name = name->get<std::string>();
    wb.add_sheet(sheet_name);

    auto cells = sheet.find("cells");
    if (cells == sheet.end()) continue;
    if (!cells->is_array()) throw FormatError("\"cells\" must be an array in sheet " + sheet_name);
    std::set<std::pair<int, int>> seen;
    for (const json& cell : *cells) {
      if (!cell.is_object()) throw FormatError("cell entries must be objects");
      reject_unknown(cell, {"ref", "value", "formula"}, "cell");
      auto ref_it = cell.find("ref");
      if (ref_it == cell.end() || !ref_it->is_string()) throw FormatError("cell needs a string \"ref\"");
      const std::string ref_text = ref_it->get<std::string>();
      auto ref = parse_cell_ref(ref_text);
      if (!ref || ref->sheet) throw FormatError("invalid cell ref '" + ref_text + "'");
      if (!seen.insert({ref->row, ref->column}).second) {
        throw FormatError("duplicate cell " + ref_text + " in sheet " + sheet_name);
      }
      auto value = cell.find("value");
      auto formula = cell.find("formula");
      if ((value == cell.end()) == (formula == cell.end())) {
        throw FormatError("cell " + ref_text + " needs exactly one of \"value\" or \"formula\"");
      }
      if (formula != cell.end()) {
        if (!formula->is_string()) throw FormatError("formula of " + ref_text + " must be a string");
        const std::string text = formula->get<std::string>();
        try {
          wb.set_formula(sheet_name, ref->column, ref->row, text);
        } catch (const SyntaxError& e) {
          wb.add_warning({std::string(kFormulaError),
                          render_address(CellAddress{sheet_name, ref->column, ref->row}), e.what()});
          wb.set_value(sheet_name, ref->column, ref->row, text);
        }
      } else if (value->is_boolean()) {
        wb.set_value(sheet_name, ref->column, ref->row, value->get<bool>());
      } else if (value->is_number()) {
        wb.set_value(sheet_name, ref->column, ref->row, value->get<double>());
      } else if (value->is_string()) {
        wb.set_value(sheet_name, ref->column, ref->row, value->get<std::string>());
      } else {
        throw FormatError("value of " + ref_text + " must be a number, string or boolean");
      }
    }
  }
  return wb;
}

Workbook parse_csv_grid(std::string_view bytes, std::string source_path) {
  Workbook wb(std::move(source_path));
  wb.add_sheet("Sheet1");
  auto records = split_csv(bytes);
  if (records.size() > static_cast<std::size_t>(kMaxRow)) throw FormatError("too many rows");
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& fields = records[r];
    if (fields.size() > static_cast<std::size_t>(kMaxColumn)) throw FormatError("too many columns");
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c].empty()) continue;
      wb.set_text("Sheet1", static_cast<int>(c + 1), static_cast<int>(r + 1), fields[c]);
    }
  }
  return wb;
}

InputFormat infer_format(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (char& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (ext == ".json") return InputFormat::kWorkbookDoc;
  if (ext == ".csv") return InputFormat::kCsvGrid;
  throw FormatError("cannot infer input format from extension '" + ext + "'");
}

Workbook load_workbook(const std::filesystem::path& path, InputFormat format) {
  if (format == InputFormat::kAuto) format = infer_format(path);
  std::string bytes = read_file(path);
  if (format == InputFormat::kWorkbookDoc) return parse_workbook_document(bytes, path.string());
  return parse_csv_grid(bytes, path.string());
}

}  // namespace cellgauge
