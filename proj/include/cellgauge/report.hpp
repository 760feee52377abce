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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellgauge/conditional.hpp"
#include "cellgauge/diagnostics.hpp"
#include "cellgauge/graph.hpp"
#include "cellgauge/metrics.hpp"
#include "cellgauge/reliability.hpp"
#include "cellgauge/workbook.hpp"

namespace cellgauge {

inline constexpr std::string_view kToolVersion = CELLGAUGE_VERSION;

enum class OutputFormat { kJson, kText };

/// Exit codes of `cellgauge analyze`.
enum ExitCode : int {
  kExitClean = 0,
  kExitWarnings = 1,
  kExitInvalidInput = 2,
  kExitCycle = 3,
};

struct AnalysisConfig {
  DispersionConfig dispersion;
  ReliabilityConfig reliability;
  BetaConfig beta;
  OutputFormat format = OutputFormat::kJson;
  /// Formula cells with DR above this are flagged.
  double flag_dr = 0.5;
  /// Formula cells with a column or row span above this are flagged; about
  /// twenty rows and columns fit on one screen.
  int flag_span = 20;
  /// Flagged cells listed ahead of the rest in text output.
  int top_n = 10;

  /// Throws DomainError.
  void validate() const;
};

struct CellReport {
  CellMetrics metrics;
  double cell_error_rate = 0.0;
  bool flagged = false;
};

struct CascadeReport {
  CascadeStats stats;
  CascadeReliability reliability;
  std::vector<ConditionalScore> conditionals;
};

struct WorkbookReport {
  std::string tool_version{kToolVersion};
  std::string input_digest;
  std::string source;
  AnalysisConfig config;
  std::vector<CellReport> cells;
  /// Empty optional when the graph has cycles.
  std::optional<std::vector<CascadeReport>> cascades;
  ModularMetrics modular;
  std::vector<RangeLinkageFinding> range_findings;
  std::vector<Warning> warnings;
  int exit_code = kExitClean;
};

/// "sha256:<hex>" of the bytes.
std::string content_digest(std::string_view bytes);

/// Runs the whole pipeline on an in-memory workbook. Per-cell problems
/// become warnings; cycles make graph-dependent sections unavailable.
WorkbookReport analyze_workbook(const Workbook& wb, std::string input_digest,
                                const AnalysisConfig& config);

/// Loads and analyzes a file. Throws IoError or FormatError for unreadable
/// or invalid input, DomainError for an invalid configuration.
WorkbookReport analyze(const std::filesystem::path& path, const AnalysisConfig& config,
                       InputFormat format = InputFormat::kAuto);

/// True unless CELLGAUGE_NO_COLOR is set.
bool color_from_env();

/// JSON: sorted keys, reals rounded to 6 decimals, one trailing newline.
/// Text: tables ranked by adjusted cell error rate, flagged cells first.
std::string emit_report(const WorkbookReport& report, OutputFormat format,
                        bool color = color_from_env());

/// Inverse of JSON emission. Fields not carried by the JSON form (cascade
/// member lists, per-cell rate maps) stay empty. Throws FormatError.
WorkbookReport report_from_json(std::string_view json_text);

/// Overrides reliability weights and factors from a JSON object with any of
/// "tokens", "depth", "dispersion", "decisions", "span", "data_cell_factor",
/// "cap". Throws FormatError.
void apply_weights_document(std::string_view json_text, ReliabilityConfig& cfg);

}  // namespace cellgauge
