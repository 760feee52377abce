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

#include "cellgauge/graph.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

namespace cellgauge {

namespace {

std::string describe_cycles(const std::vector<std::vector<CellAddress>>& cycles) {
  std::string msg = "reference cycle:";
  for (const auto& cycle : cycles) {
    msg += " [";
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i > 0) msg += ", ";
      msg += render_address(cycle[i]);
    }
    msg += "]";
  }
  return msg;
}

}  // namespace

CycleError::CycleError(std::vector<std::vector<CellAddress>> cycles)
    : Error(describe_cycles(cycles)), cycles_(std::move(cycles)) {}

std::optional<NodeId> CellGraph::find(const CellAddress& address) const {
  auto it = index_.find(address);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId CellGraph::id_of(const CellAddress& address) const {
  if (auto id = find(address)) return *id;
  throw UnknownCellError("cell " + render_address(address) + " is not in the dependency graph");
}

void CellGraph::require_acyclic() const {
  if (!acyclic()) throw CycleError(cycles_);
}

std::span<const NodeId> CellGraph::topological_order() const {
  require_acyclic();
  return topo_;
}

const BigCount& CellGraph::reachability(NodeId id) const {
  require_acyclic();
  return reach_[id];
}

const BigCount& CellGraph::path_length_sum(NodeId id) const {
  require_acyclic();
  return length_sum_[id];
}

int CellGraph::max_path_length(NodeId id) const {
  require_acyclic();
  return max_length_[id];
}

std::vector<NodeId> CellGraph::bottom_line_cells() const {
  std::vector<NodeId> out;
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].formula && nodes_[id].out.empty()) out.push_back(id);
  }
  return out;
}

// Iterative Tarjan; a component is a cycle when it has several cells or a
// self-reference.
void CellGraph::find_cycles() {
  const std::size_t n = nodes_.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  std::size_t counter = 0;

  struct Frame {
    NodeId node;
    std::size_t next_edge;
  };
  std::vector<Frame> call;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& out = nodes_[f.node].out;
      if (f.next_edge < out.size()) {
        NodeId w = out[f.next_edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      NodeId v = f.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
      if (low[v] != index[v]) continue;
      std::vector<NodeId> component;
      NodeId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != v);
      bool self_loop = std::find(nodes_[v].out.begin(), nodes_[v].out.end(), v) != nodes_[v].out.end();
      if (component.size() > 1 || self_loop) {
        std::sort(component.begin(), component.end());
        std::vector<CellAddress> cells;
        for (NodeId id : component) cells.push_back(nodes_[id].address);
        cycles_.push_back(std::move(cells));
      }
    }
  }
  std::sort(cycles_.begin(), cycles_.end(), [this](const auto& a, const auto& b) {
    return index_.at(a.front()) < index_.at(b.front());
  });
}

void CellGraph::compute_paths() {
  const std::size_t n = nodes_.size();
  std::vector<std::size_t> pending(n);
  std::deque<NodeId> ready;
  for (NodeId id = 0; id < n; ++id) {
    pending[id] = nodes_[id].in.size();
    if (pending[id] == 0) ready.push_back(id);
  }
  topo_.reserve(n);
  while (!ready.empty()) {
    NodeId v = ready.front();
    ready.pop_front();
    topo_.push_back(v);
    for (NodeId w : nodes_[v].out) {
      if (--pending[w] == 0) ready.push_back(w);
    }
  }

  reach_.assign(n, BigCount(0));
  length_sum_.assign(n, BigCount(0));
  max_length_.assign(n, 0);
  for (NodeId v : topo_) {
    const auto& in = nodes_[v].in;
    if (in.empty()) {
      reach_[v] = 1;
      length_sum_[v] = 1;
      max_length_[v] = 1;
      continue;
    }
    BigCount count = 0;
    BigCount sum = 0;
    int longest = 0;
    for (NodeId p : in) {
      count += reach_[p];
      sum += length_sum_[p];
      longest = std::max(longest, max_length_[p]);
    }
    // Every path into v gains one cell: v itself.
    sum += count;
    reach_[v] = std::move(count);
    length_sum_[v] = std::move(sum);
    max_length_[v] = longest + 1;
  }
}

CellGraph build_graph(const Workbook& wb) { return build_graph(wb, resolve_references(wb)); }

CellGraph build_graph(const Workbook& wb, const Resolution& resolution) {
  CellGraph g;

  struct Entry {
    std::size_t sheet;
    int row;
    int column;
    CellAddress address;
    bool formula;
    bool materialized;
  };
  std::vector<Entry> entries;
  std::unordered_map<CellAddress, bool, CellAddressHash> present;
  for (std::size_t s = 0; s < wb.sheets().size(); ++s) {
    for (const auto& [key, cell] : wb.sheets()[s].cells) {
      entries.push_back({s, cell.address.row, cell.address.column, cell.address, cell.is_formula(), false});
      present.emplace(cell.address, true);
    }
  }
  for (const ResolvedReference& ref : resolution.references) {
    if (present.count(ref.to) != 0) continue;
    present.emplace(ref.to, true);
    std::size_t s = *wb.sheet_index(ref.to.sheet);
    entries.push_back({s, ref.to.row, ref.to.column, ref.to, false, true});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.sheet, a.row, a.column) < std::tie(b.sheet, b.row, b.column);
  });

  g.nodes_.reserve(entries.size());
  g.index_.reserve(entries.size());
  for (Entry& e : entries) {
    g.index_.emplace(e.address, g.nodes_.size());
    if (e.materialized) {
      g.warnings_.push_back({std::string(kEmptyReferencedCell), render_address(e.address),
                             "referenced cell is empty; treated as data with value 0"});
    }
    g.nodes_.push_back({std::move(e.address), e.formula, e.materialized, {}, {}});
  }

  for (const DanglingReference& d : resolution.dangling) {
    g.warnings_.push_back({std::string(kDanglingReference), render_address(d.from),
                           "reference " + d.target + " names a sheet that does not exist"});
  }
  for (const ResolvedReference& ref : resolution.references) {
    NodeId dependent = g.index_.at(ref.from);
    NodeId precedent = g.index_.at(ref.to);
    g.nodes_[dependent].in.push_back(precedent);
    g.nodes_[precedent].out.push_back(dependent);
    ++g.edge_count_;
  }

  g.find_cycles();
  if (g.acyclic()) g.compute_paths();
  return g;
}

int fan_in(const CellGraph& g, const CellAddress& cell) {
  return static_cast<int>(g.precedents(g.id_of(cell)).size());
}

int fan_out(const CellGraph& g, const CellAddress& cell) {
  return static_cast<int>(g.dependents(g.id_of(cell)).size());
}

BigCount reachability(const CellGraph& g, const CellAddress& cell) {
  return g.reachability(g.id_of(cell));
}

CascadeStats cascade_stats(const CellGraph& g, const CellAddress& terminal) {
  NodeId t = g.id_of(terminal);
  if (!g.acyclic()) throw CycleError(g.cycles());

  std::vector<bool> member(g.node_count(), false);
  std::vector<NodeId> frontier{t};
  member[t] = true;
  while (!frontier.empty()) {
    NodeId v = frontier.back();
    frontier.pop_back();
    for (NodeId p : g.precedents(v)) {
      if (!member[p]) {
        member[p] = true;
        frontier.push_back(p);
      }
    }
  }

  CascadeStats stats;
  stats.terminal = g.address(t);
  stats.bottom_line = g.dependents(t).empty();
  BigCount reach_total = 0;
  for (NodeId id = 0; id < g.node_count(); ++id) {
    if (!member[id]) continue;
    ++stats.cell_count;
    reach_total += g.reachability(id);
    stats.cells.push_back(g.address(id));
    if (g.precedents(id).empty()) stats.input_cells.push_back(g.address(id));
  }
  stats.reachability = g.reachability(t);
  stats.total_paths = stats.reachability;
  stats.avg_reachability = Rational(reach_total, BigCount(stats.cell_count));
  stats.avg_path_length = Rational(g.path_length_sum(t), stats.total_paths);
  stats.max_path_length = g.max_path_length(t);
  return stats;
}

std::vector<std::vector<CellAddress>> enumerate_paths(const CellGraph& g,
                                                      const CellAddress& terminal,
                                                      std::size_t limit) {
  NodeId t = g.id_of(terminal);
  if (!g.acyclic()) throw CycleError(g.cycles());

  std::vector<std::vector<CellAddress>> paths;
  // Walk backwards from the terminal; `trail` holds terminal..current.
  struct Frame {
    NodeId node;
    std::size_t next;
  };
  std::vector<Frame> stack{{t, 0}};
  std::vector<NodeId> trail{t};
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto in = g.precedents(f.node);
    if (in.empty()) {
      if (paths.size() == limit) throw LimitExceededError(limit);
      std::vector<CellAddress> path;
      path.reserve(trail.size());
      for (auto it = trail.rbegin(); it != trail.rend(); ++it) path.push_back(g.address(*it));
      paths.push_back(std::move(path));
    }
    if (f.next < in.size()) {
      NodeId p = in[f.next++];
      stack.push_back({p, 0});
      trail.push_back(p);
      continue;
    }
    stack.pop_back();
    trail.pop_back();
  }
  return paths;
}

}  // namespace cellgauge
