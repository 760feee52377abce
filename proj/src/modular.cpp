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

#include <set>

#include "cellgauge/metrics.hpp"

namespace cellgauge {

ModularMetrics modular_metrics(const Workbook& wb, const CellGraph& g) {
  return modular_metrics(wb, resolve_references(wb), g);
}

ModularMetrics modular_metrics(const Workbook& wb, const Resolution& resolution,
                               const CellGraph& g) {
  ModularMetrics m;
  std::set<std::tuple<std::string, CellAddress, std::string>> seen;
  std::map<std::string, std::set<std::string>> reads_from;
  std::map<std::string, std::set<std::string>> read_by;
  for (const Sheet& s : wb.sheets()) {
    reads_from[s.name];
    read_by[s.name];
  }

  for (const ResolvedReference& r : resolution.references) {
    if (r.from.sheet == r.to.sheet) continue;
    if (!seen.emplace(r.to.sheet, r.to, r.from.sheet).second) continue;
    m.triples.push_back({r.to.sheet, r.to, r.from.sheet});
    ++m.triple_count_by_pair[{r.to.sheet, r.from.sheet}];
    reads_from[r.from.sheet].insert(r.to.sheet);
    read_by[r.to.sheet].insert(r.from.sheet);
  }
  for (const auto& [sheet, sources] : reads_from) m.module_fan_in[sheet] = static_cast<int>(sources.size());
  for (const auto& [sheet, readers] : read_by) m.module_fan_out[sheet] = static_cast<int>(readers.size());

  std::size_t data_cells = 0;
  std::size_t unreferenced = 0;
  wb.for_each_cell([&](const Cell& cell) {
    if (!cell.is_data()) return;
    ++data_cells;
    auto id = g.find(cell.address);
    if (!id || g.dependents(*id).empty()) ++unreferenced;
  });
  if (data_cells > 0) {
    m.unreferenced_data_pct = 100.0 * static_cast<double>(unreferenced) / static_cast<double>(data_cells);
  }
  return m;
}

}  // namespace cellgauge
