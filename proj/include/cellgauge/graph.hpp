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
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cellgauge/cell_ref.hpp"
#include "cellgauge/diagnostics.hpp"
#include "cellgauge/errors.hpp"
#include "cellgauge/numeric.hpp"
#include "cellgauge/workbook.hpp"

namespace cellgauge {

using NodeId = std::size_t;

/// Raised by path operations on a graph that contains reference cycles.
class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::vector<CellAddress>> cycles);
  const std::vector<std::vector<CellAddress>>& cycles() const { return cycles_; }

 private:
  std::vector<std::vector<CellAddress>> cycles_;
};

/// Workbook-wide dependency multigraph. Edges run precedent -> dependent,
/// one per resolved reference. Node ids follow workbook order (sheet, row,
/// column). Immutable after build.
class CellGraph {
 public:
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  const CellAddress& address(NodeId id) const { return nodes_[id].address; }
  std::optional<NodeId> find(const CellAddress& address) const;
  /// Throws UnknownCellError.
  NodeId id_of(const CellAddress& address) const;

  bool is_formula(NodeId id) const { return nodes_[id].formula; }
  /// Empty cell that some formula references; modelled as a zero data cell.
  bool is_materialized(NodeId id) const { return nodes_[id].materialized; }

  /// Multi-edges appear once per reference.
  std::span<const NodeId> precedents(NodeId id) const { return nodes_[id].in; }
  std::span<const NodeId> dependents(NodeId id) const { return nodes_[id].out; }

  bool acyclic() const { return cycles_.empty(); }
  /// Each entry lists the cells of one strongly connected cycle.
  const std::vector<std::vector<CellAddress>>& cycles() const { return cycles_; }
  /// Precedents before dependents. Throws CycleError.
  std::span<const NodeId> topological_order() const;

  /// Number of source-to-cell paths, memoized at build. Throws CycleError.
  const BigCount& reachability(NodeId id) const;
  /// Sum of cell counts over all those paths.
  const BigCount& path_length_sum(NodeId id) const;
  /// Cells on the longest path ending here.
  int max_path_length(NodeId id) const;

  /// Formula cells with no dependents, in node order.
  std::vector<NodeId> bottom_line_cells() const;

  /// W002 and W003 diagnostics produced while building.
  const std::vector<Warning>& warnings() const { return warnings_; }

  friend CellGraph build_graph(const Workbook& wb);
  friend CellGraph build_graph(const Workbook& wb, const Resolution& resolution);

 private:
  struct Node {
    CellAddress address;
    bool formula = false;
    bool materialized = false;
    std::vector<NodeId> in;
    std::vector<NodeId> out;
  };

  void require_acyclic() const;
  void find_cycles();
  void compute_paths();

  std::vector<Node> nodes_;
  std::unordered_map<CellAddress, NodeId, CellAddressHash> index_;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<CellAddress>> cycles_;
  std::vector<NodeId> topo_;
  std::vector<BigCount> reach_;
  std::vector<BigCount> length_sum_;
  std::vector<int> max_length_;
  std::vector<Warning> warnings_;
};

CellGraph build_graph(const Workbook& wb);
CellGraph build_graph(const Workbook& wb, const Resolution& resolution);

/// Throws UnknownCellError.
int fan_in(const CellGraph& g, const CellAddress& cell);
int fan_out(const CellGraph& g, const CellAddress& cell);

/// Throws CycleError or UnknownCellError.
BigCount reachability(const CellGraph& g, const CellAddress& cell);

struct CascadeStats {
  CellAddress terminal;
  BigCount reachability;
  BigCount total_paths;
  Rational avg_reachability;
  Rational avg_path_length;  // cells per path
  int max_path_length = 0;
  int cell_count = 0;
  std::vector<CellAddress> input_cells;
  /// Every cell of the cascade (terminal and all transitive precedents).
  std::vector<CellAddress> cells;
  /// False when the terminal still has dependents; stats cover its precedents.
  bool bottom_line = true;
};

/// Statistics over the terminal and its transitive precedents.
/// Throws CycleError or UnknownCellError.
CascadeStats cascade_stats(const CellGraph& g, const CellAddress& terminal);

/// Every source-to-terminal path as a cell sequence, by exhaustive
/// depth-first search. Throws LimitExceededError once more than `limit`
/// paths exist, CycleError on cyclic graphs.
std::vector<std::vector<CellAddress>> enumerate_paths(const CellGraph& g,
                                                      const CellAddress& terminal,
                                                      std::size_t limit);

}  // namespace cellgauge
