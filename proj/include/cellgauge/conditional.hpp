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
#include <vector>

#include "cellgauge/cell_ref.hpp"
#include "cellgauge/graph.hpp"
#include "cellgauge/workbook.hpp"

namespace cellgauge {

/// Locates one IF call: its cell plus the child-index path from the formula root.
struct ConstructId {
  CellAddress cell;
  std::vector<int> path;

  bool operator==(const ConstructId&) const = default;
  auto operator<=>(const ConstructId&) const = default;
};

std::string render_construct_id(const ConstructId& id);

struct ConditionalConstruct {
  ConstructId id;
  /// Indices into the construct list of the first conditionals reached from
  /// this IF's condition and value branches (M = size). Always smaller than
  /// this construct's own index.
  std::vector<std::size_t> nested_or_precedent;
  /// Value branches whose scan found no conditional (N).
  int conditionless_branches = 0;
  /// No other construct lists this one.
  bool is_final = true;
};

struct BetaConfig {
  double beta = 0.0;
  /// Throws DomainError when beta < 0.
  void validate() const;
};

/// One construct per IF call, ordered so nested and precedent constructs
/// come first. Scans follow cell references through conditionless cells and
/// stop at the first IF on each path. Throws CycleError.
std::vector<ConditionalConstruct> find_conditionals(const Workbook& wb, const CellGraph& g);

/// O(S) = (sum of O(S_i) + N)^(1 + beta) for every construct, bottom-up.
std::vector<double> conditional_complexities(const std::vector<ConditionalConstruct>& constructs,
                                             const BetaConfig& cfg);
double conditional_complexity(const std::vector<ConditionalConstruct>& constructs,
                              std::size_t index, const BetaConfig& cfg);

struct ConditionalScore {
  ConstructId construct;
  double o_value = 0.0;
};

/// O(S) of each construct in the terminal's cascade that no other construct
/// of the same cascade depends on.
std::vector<ConditionalScore> cascade_conditional_report(
    const CellGraph& g, const std::vector<ConditionalConstruct>& constructs,
    const std::vector<double>& complexities, const CellAddress& terminal);
std::vector<ConditionalScore> cascade_conditional_report(
    const CellGraph& g, const std::vector<ConditionalConstruct>& constructs,
    const CellAddress& terminal, const BetaConfig& cfg);

}  // namespace cellgauge
