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
#include <cstdlib>
#include <map>
#include <unordered_map>

#include <openssl/evp.h>

#include "cellgauge/errors.hpp"
#include "cellgauge/report.hpp"

namespace cellgauge {

void AnalysisConfig::validate() const {
  dispersion.validate();
  reliability.validate();
  beta.validate();
  if (!(flag_dr >= 0.0)) throw DomainError("DR flag threshold must be non-negative");
  if (flag_span < 0) throw DomainError("span flag threshold must be non-negative");
  if (top_n < 0) throw DomainError("top-N must be non-negative");
}

std::string content_digest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

bool color_from_env() { return std::getenv("CELLGAUGE_NO_COLOR") == nullptr; }

WorkbookReport analyze_workbook(const Workbook& wb, std::string input_digest,
                                const AnalysisConfig& config) {
  config.validate();
  WorkbookReport report;
  report.input_digest = std::move(input_digest);
  report.source = wb.source_path();
  report.config = config;
  report.warnings = wb.warnings();

  const Resolution resolution = resolve_references(wb);
  const CellGraph graph = build_graph(wb, resolution);
  report.warnings.insert(report.warnings.end(), graph.warnings().begin(), graph.warnings().end());

  // resolve_references emits each cell's references contiguously.
  std::unordered_map<CellAddress, std::pair<std::size_t, std::size_t>, CellAddressHash> ref_spans;
  for (std::size_t i = 0; i < resolution.references.size();) {
    std::size_t j = i;
    while (j < resolution.references.size() &&
           resolution.references[j].from == resolution.references[i].from) {
      ++j;
    }
    ref_spans.emplace(resolution.references[i].from, std::pair(i, j));
    i = j;
  }

  std::map<CellAddress, CellMetrics> metrics_by_cell;
  wb.for_each_cell([&](const Cell& cell) {
    std::span<const ResolvedReference> refs;
    if (auto it = ref_spans.find(cell.address); it != ref_spans.end()) {
      refs = std::span(resolution.references).subspan(it->second.first,
                                                      it->second.second - it->second.first);
    }
    CellReport row;
    row.metrics = formula_metrics(cell, refs, config.dispersion);
    row.cell_error_rate = adjusted_cell_rate(row.metrics, config.reliability);
    const CellMetrics& m = row.metrics;
    row.flagged = m.is_formula && (m.dispersion > config.flag_dr || m.col_span > config.flag_span ||
                                   m.row_span > config.flag_span);
    if (m.cross_sheet_ref_count > 0) {
      report.warnings.push_back({std::string(kCrossSheetDispersionExcluded),
                                 render_address(cell.address),
                                 std::to_string(m.cross_sheet_ref_count) +
                                     " cross-sheet reference(s) excluded from dispersion"});
    }
    metrics_by_cell.emplace(cell.address, m);
    report.cells.push_back(std::move(row));
  });

  report.range_findings = check_range_linkage(wb);
  for (const RangeLinkageFinding& f : report.range_findings) {
    if (f.verdict != Verdict::kViolation) continue;
    report.warnings.push_back(
        {std::string(kRangeLinkageViolation), render_range(f.target_range),
         std::string(to_string(f.ref_style)) + " link to " + render_range(f.source_range) +
             ": expected extent " + std::to_string(f.expected_extent) + ", found " +
             std::to_string(f.actual_extent)});
  }

  report.modular = modular_metrics(wb, resolution, graph);

  if (graph.acyclic()) {
    const auto constructs = find_conditionals(wb, graph);
    const auto complexities = conditional_complexities(constructs, config.beta);
    std::vector<CascadeReport> cascades;
    for (NodeId terminal : graph.bottom_line_cells()) {
      CascadeReport c;
      c.stats = cascade_stats(graph, graph.address(terminal));
      c.reliability = cascade_reliability(c.stats, metrics_by_cell, config.reliability);
      c.conditionals =
          cascade_conditional_report(graph, constructs, complexities, graph.address(terminal));
      cascades.push_back(std::move(c));
    }
    report.cascades = std::move(cascades);
  } else {
    for (const auto& cycle : graph.cycles()) {
      std::string cells;
      for (const CellAddress& a : cycle) {
        if (!cells.empty()) cells += ", ";
        cells += render_address(a);
      }
      report.warnings.push_back({std::string(kCycleDetected), render_address(cycle.front()),
                                 "reference cycle through " + cells});
    }
  }

  std::sort(report.warnings.begin(), report.warnings.end());
  if (!graph.acyclic()) {
    report.exit_code = kExitCycle;
  } else if (!report.warnings.empty()) {
    report.exit_code = kExitWarnings;
  }
  return report;
}

WorkbookReport analyze(const std::filesystem::path& path, const AnalysisConfig& config,
                       InputFormat format) {
  config.validate();
  const std::string bytes = read_file(path);
  if (format == InputFormat::kAuto) format = infer_format(path);
  Workbook wb = format == InputFormat::kWorkbookDoc ? parse_workbook_document(bytes, path.string())
                                                    : parse_csv_grid(bytes, path.string());
  return analyze_workbook(wb, content_digest(bytes), config);
}

}  // namespace cellgauge
