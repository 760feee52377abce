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

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cellgauge/errors.hpp"
#include "cellgauge/graph.hpp"
#include "cellgauge/metrics.hpp"
#include "cellgauge/report.hpp"
#include "cellgauge/workbook.hpp"

namespace {

using namespace cellgauge;

int run_analyze(const std::string& file, AnalysisConfig config, const std::string& format,
                const std::string& out_path, const std::string& mode, const std::string& weights) {
  config.format = format == "text" ? OutputFormat::kText : OutputFormat::kJson;
  config.dispersion.mode = parse_dispersion_mode(mode);
  if (!weights.empty()) apply_weights_document(read_file(weights), config.reliability);

  WorkbookReport report = analyze(file, config);
  std::string bytes = emit_report(report, config.format,
                                  config.format == OutputFormat::kText && out_path.empty() &&
                                      color_from_env());
  if (out_path.empty()) {
    std::cout << bytes;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + out_path + "'");
    out << bytes;
  }
  return report.exit_code;
}

int run_paths(const std::string& file, const std::string& cell_text, std::size_t limit) {
  Workbook wb = load_workbook(file);
  auto ref = parse_cell_ref(cell_text);
  if (!ref) throw FormatError("invalid cell '" + cell_text + "'");
  if (wb.sheets().empty()) throw UnknownCellError("workbook has no sheets");
  std::string sheet = wb.sheets().front().name;
  if (ref->sheet) {
    auto idx = wb.sheet_index(*ref->sheet);
    if (!idx) throw UnknownCellError("no sheet named '" + *ref->sheet + "'");
    sheet = wb.sheets()[*idx].name;
  }
  CellGraph g = build_graph(wb);
  auto paths = enumerate_paths(g, CellAddress{sheet, ref->column, ref->row}, limit);
  for (const auto& path : paths) {
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i > 0) std::cout << " -> ";
      std::cout << render_address(path[i]);
    }
    std::cout << "\n";
  }
  std::cout << paths.size() << " path(s)\n";
  return kExitClean;
}

int run_check_ranges(const std::string& file) {
  Workbook wb = load_workbook(file);
  bool violation = false;
  for (const RangeLinkageFinding& f : check_range_linkage(wb)) {
    violation = violation || f.verdict == Verdict::kViolation;
    std::cout << to_string(f.verdict) << " " << render_range(f.target_range) << " -> "
              << render_range(f.source_range) << " " << (f.vertical ? "vertical" : "horizontal")
              << " " << to_string(f.ref_style) << " s=" << f.s << " expected=" << f.expected_extent
              << " actual=" << f.actual_extent << "\n";
  }
  return violation ? kExitWarnings : kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static complexity and reliability audit for spreadsheet workbooks", "cellgauge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cellgauge::kToolVersion));

  cellgauge::AnalysisConfig config;
  std::string file, format = "json", out_path, mode = "product", weights;
  auto* analyze = app.add_subcommand("analyze", "Full audit report");
  analyze->add_option("file", file, "Workbook (.json document or .csv grid)")->required();
  analyze->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  analyze->add_option("--out", out_path, "Write the report here instead of stdout");
  analyze->add_option("--alpha", config.dispersion.alpha, "Dispersion slope");
  analyze->add_option("--beta", config.beta.beta, "Conditional complexity exponent");
  analyze->add_option("--cer", config.reliability.base_cer, "Base cell error rate");
  analyze->add_option("--dispersion-mode", mode, "Distance used for dispersion")
      ->check(CLI::IsMember({"product", "manhattan", "euclidean"}));
  analyze->add_option("--weights", weights, "JSON file with complexity weights");
  analyze->add_option("--flag-dr", config.flag_dr, "Flag cells with dispersion above this");
  analyze->add_option("--flag-span", config.flag_span, "Flag cells with a span above this");

  std::string cell;
  std::size_t limit = 10000;
  auto* paths = app.add_subcommand("paths", "Enumerate every path into a cell");
  paths->add_option("file", file, "Workbook")->required();
  paths->add_option("--cell", cell, "Target cell, e.g. Sheet1!C4")->required();
  paths->add_option("--limit", limit, "Maximum number of paths");

  auto* ranges = app.add_subcommand("check-ranges", "Range linkage findings only");
  ranges->add_option("file", file, "Workbook")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cellgauge::kExitInvalidInput;
  }

  try {
    if (*analyze) return run_analyze(file, config, format, out_path, mode, weights);
    if (*paths) return run_paths(file, cell, limit);
    return run_check_ranges(file);
  } catch (const cellgauge::CycleError& e) {
    std::cerr << "cellgauge: " << e.what() << "\n";
    return cellgauge::kExitCycle;
  } catch (const cellgauge::LimitExceededError& e) {
    std::cerr << "cellgauge: " << e.what() << "\n";
    return cellgauge::kExitWarnings;
  } catch (const cellgauge::Error& e) {
    std::cerr << "cellgauge: " << e.what() << "\n";
    return cellgauge::kExitInvalidInput;
  }
}
