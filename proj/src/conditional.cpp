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

#include "cellgauge/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>

namespace cellgauge {

namespace {

using IndexSet = std::vector<std::size_t>;  // sorted, unique

void merge_into(IndexSet& into, const IndexSet& from) {
  if (from.empty()) return;
  IndexSet merged;
  merged.reserve(into.size() + from.size());
  std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(merged));
  into = std::move(merged);
}

class Discovery {
 public:
  Discovery(const Workbook& wb, const CellGraph& g) : wb_(wb), g_(g) {}

  std::vector<ConditionalConstruct> run() {
    auto order = g_.topological_order();
    top_.assign(g_.node_count(), {});
    for (NodeId id : order) {
      const Cell* cell = wb_.find(g_.address(id));
      if (cell == nullptr || !cell->is_formula()) continue;
      const AstNode& root = cell->formula()->root;
      std::vector<int> path;
      register_constructs(root, *cell, path);
      path.clear();
      top_[id] = scan(root, *cell, path);
    }
    for (const ConditionalConstruct& c : constructs_) {
      for (std::size_t member : c.nested_or_precedent) constructs_[member].is_final = false;
    }
    return std::move(constructs_);
  }

 private:
  // Post-order, so IFs nested in a branch get smaller indices than their parent.
  void register_constructs(const AstNode& n, const Cell& cell, std::vector<int>& path) {
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      path.push_back(static_cast<int>(i));
      register_constructs(n.children[i], cell, path);
      path.pop_back();
    }
    if (!n.is_call("IF")) return;

    ConditionalConstruct c;
    c.id = ConstructId{cell.address, path};
    IndexSet members;
    std::vector<int> child_path = path;
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      child_path.push_back(static_cast<int>(i));
      IndexSet found = scan(n.children[i], cell, child_path);
      child_path.pop_back();
      if (i > 0 && found.empty()) ++c.conditionless_branches;
      merge_into(members, found);
    }
    // IF(cond, x) yields FALSE on the other branch: a constant, conditionless.
    if (n.children.size() == 2) ++c.conditionless_branches;
    c.nested_or_precedent = std::move(members);
    index_.emplace(c.id, constructs_.size());
    constructs_.push_back(std::move(c));
  }

  // First conditionals reached from `n`: IF nodes stop the walk, references
  // continue into the referenced cells' precomputed sets.
  IndexSet scan(const AstNode& n, const Cell& cell, std::vector<int>& path) {
    if (n.is_call("IF")) return {index_.at(ConstructId{cell.address, path})};
    IndexSet out;
    if (n.kind == NodeKind::kCellRef || n.kind == NodeKind::kRangeRef) {
      for_each_target(n, cell, [&](NodeId id) { merge_into(out, top_[id]); });
      return out;
    }
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      path.push_back(static_cast<int>(i));
      merge_into(out, scan(n.children[i], cell, path));
      path.pop_back();
    }
    return out;
  }

  template <typename Fn>
  void for_each_target(const AstNode& n, const Cell& cell, Fn&& fn) const {
    const CellRef& start = n.kind == NodeKind::kCellRef ? n.ref : n.range.start;
    const CellRef& end = n.kind == NodeKind::kCellRef ? n.ref : n.range.end;
    std::string sheet_name = cell.address.sheet;
    if (start.sheet) {
      auto idx = wb_.sheet_index(*start.sheet);
      if (!idx) return;
      sheet_name = wb_.sheets()[*idx].name;
    }
    const Sheet& sheet = wb_.sheets()[*wb_.sheet_index(sheet_name)];
    const long long area = static_cast<long long>(end.column - start.column + 1) *
                           static_cast<long long>(end.row - start.row + 1);
    auto visit = [&](const Cell& target) {
      if (!target.is_formula()) return;
      if (auto id = g_.find(target.address)) fn(*id);
    };
    if (area > static_cast<long long>(sheet.cells.size())) {
      for (const auto& [key, target] : sheet.cells) {
        const CellAddress& a = target.address;
        if (a.column >= start.column && a.column <= end.column && a.row >= start.row &&
            a.row <= end.row) {
          visit(target);
        }
      }
      return;
    }
    for (int row = start.row; row <= end.row; ++row) {
      for (int col = start.column; col <= end.column; ++col) {
        if (const Cell* target = sheet.find(col, row)) visit(*target);
      }
    }
  }

  const Workbook& wb_;
  const CellGraph& g_;
  std::vector<ConditionalConstruct> constructs_;
  std::map<ConstructId, std::size_t> index_;
  std::vector<IndexSet> top_;
};

}  // namespace

std::string render_construct_id(const ConstructId& id) {
  std::string out = render_address(id.cell);
  if (id.path.empty()) return out;
  out += '#';
  for (std::size_t i = 0; i < id.path.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(id.path[i]);
  }
  return out;
}

void BetaConfig::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be non-negative");
}

std::vector<ConditionalConstruct> find_conditionals(const Workbook& wb, const CellGraph& g) {
  return Discovery(wb, g).run();
}

std::vector<double> conditional_complexities(const std::vector<ConditionalConstruct>& constructs,
                                             const BetaConfig& cfg) {
  std::vector<double> o(constructs.size(), 0.0);
  for (std::size_t i = 0; i < constructs.size(); ++i) {
    double base = constructs[i].conditionless_branches;
    for (std::size_t member : constructs[i].nested_or_precedent) base += o[member];
    o[i] = std::pow(base, 1.0 + cfg.beta);
  }
  return o;
}

double conditional_complexity(const std::vector<ConditionalConstruct>& constructs,
                              std::size_t index, const BetaConfig& cfg) {
  return conditional_complexities(constructs, cfg).at(index);
}

std::vector<ConditionalScore> cascade_conditional_report(
    const CellGraph& g, const std::vector<ConditionalConstruct>& constructs,
    const std::vector<double>& complexities, const CellAddress& terminal) {
  std::vector<bool> in_cascade(g.node_count(), false);
  std::vector<NodeId> frontier{g.id_of(terminal)};
  in_cascade[frontier.front()] = true;
  while (!frontier.empty()) {
    NodeId v = frontier.back();
    frontier.pop_back();
    for (NodeId p : g.precedents(v)) {
      if (!in_cascade[p]) {
        in_cascade[p] = true;
        frontier.push_back(p);
      }
    }
  }

  std::vector<bool> member(constructs.size(), false);
  std::vector<bool> depended_on(constructs.size(), false);
  for (std::size_t i = 0; i < constructs.size(); ++i) {
    auto id = g.find(constructs[i].id.cell);
    if (!id || !in_cascade[*id]) continue;
    member[i] = true;
    for (std::size_t m : constructs[i].nested_or_precedent) depended_on[m] = true;
  }
  std::vector<ConditionalScore> out;
  for (std::size_t i = 0; i < constructs.size(); ++i) {
    if (member[i] && !depended_on[i]) out.push_back({constructs[i].id, complexities.at(i)});
  }
  return out;
}

std::vector<ConditionalScore> cascade_conditional_report(
    const CellGraph& g, const std::vector<ConditionalConstruct>& constructs,
    const CellAddress& terminal, const BetaConfig& cfg) {
  return cascade_conditional_report(g, constructs, conditional_complexities(constructs, cfg),
                                    terminal);
}

}  // namespace cellgauge
