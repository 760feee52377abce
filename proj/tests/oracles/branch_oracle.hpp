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

// Explicit enumeration of disjunctive branch selections through IF
// constructs. Each selection is rendered as a string such as
// "Sheet1!A1#:1" or "Sheet1!A1#>Sheet1!B1#1:2", so an IF reachable from
// several branches of the same construct yields the same strings once.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cellgauge/workbook.hpp"

namespace cellgauge::oracle {

struct IfSite {
  CellAddress cell;
  std::vector<int> path;
  auto operator<=>(const IfSite&) const = default;
};

inline std::string render_site(const IfSite& s) {
  std::string out = render_address(s.cell) + "#";
  for (std::size_t i = 0; i < s.path.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(s.path[i]);
  }
  return out;
}

class BranchOracle {
 public:
  explicit BranchOracle(const Workbook& wb) : wb_(wb) {}

  /// Every IF node in the workbook.
  std::vector<IfSite> sites() const {
    std::vector<IfSite> out;
    wb_.for_each_cell([&](const Cell& c) {
      if (!c.is_formula()) return;
      std::vector<int> path;
      collect(c.formula()->root, c.address, path, out);
    });
    return out;
  }

  std::set<std::string> selections(const IfSite& site) const {
    const AstNode& node = node_at(site);
    std::set<std::string> out;
    std::set<IfSite> found_all;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      std::vector<int> child = site.path;
      child.push_back(static_cast<int>(i));
      std::set<IfSite> found;
      first_ifs(node.children[i], site.cell, child, found);
      if (i > 0 && found.empty()) out.insert(render_site(site) + ":" + std::to_string(i));
      found_all.insert(found.begin(), found.end());
    }
    if (node.children.size() == 2) out.insert(render_site(site) + ":2");
    for (const IfSite& f : found_all) {
      for (const std::string& s : selections(f)) out.insert(render_site(site) + ">" + s);
    }
    return out;
  }

  /// Naive recursion of (sum of members + conditionless branches)^(1+beta).
  double complexity(const IfSite& site, double beta) const {
    const AstNode& node = node_at(site);
    std::set<IfSite> found_all;
    int conditionless = node.children.size() == 2 ? 1 : 0;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      std::vector<int> child = site.path;
      child.push_back(static_cast<int>(i));
      std::set<IfSite> found;
      first_ifs(node.children[i], site.cell, child, found);
      if (i > 0 && found.empty()) ++conditionless;
      found_all.insert(found.begin(), found.end());
    }
    double sum = conditionless;
    for (const IfSite& f : found_all) sum += complexity(f, beta);
    return std::pow(sum, 1.0 + beta);
  }

 private:
  static void collect(const AstNode& n, const CellAddress& at, std::vector<int>& path,
                      std::vector<IfSite>& out) {
    if (n.is_call("IF")) out.push_back({at, path});
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      path.push_back(static_cast<int>(i));
      collect(n.children[i], at, path, out);
      path.pop_back();
    }
  }

  const AstNode& node_at(const IfSite& site) const {
    const AstNode* n = &wb_.find(site.cell)->formula()->root;
    for (int i : site.path) n = &n->children[static_cast<std::size_t>(i)];
    return *n;
  }

  void first_ifs(const AstNode& n, const CellAddress& at, std::vector<int>& path,
                 std::set<IfSite>& out) const {
    if (n.is_call("IF")) {
      out.insert({at, path});
      return;
    }
    if (n.kind == NodeKind::kCellRef || n.kind == NodeKind::kRangeRef) {
      const CellRef& a = n.kind == NodeKind::kCellRef ? n.ref : n.range.start;
      const CellRef& b = n.kind == NodeKind::kCellRef ? n.ref : n.range.end;
      std::string sheet = at.sheet;
      if (a.sheet) {
        auto idx = wb_.sheet_index(*a.sheet);
        if (!idx) return;
        sheet = wb_.sheets()[*idx].name;
      }
      for (int r = a.row; r <= b.row; ++r) {
        for (int c = a.column; c <= b.column; ++c) {
          const Cell* target = wb_.find(CellAddress{sheet, c, r});
          if (target == nullptr || !target->is_formula()) continue;
          std::vector<int> root_path;
          first_ifs(target->formula()->root, target->address, root_path, out);
        }
      }
      return;
    }
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      path.push_back(static_cast<int>(i));
      first_ifs(n.children[i], at, path, out);
      path.pop_back();
    }
  }

  const Workbook& wb_;
};

}  // namespace cellgauge::oracle
