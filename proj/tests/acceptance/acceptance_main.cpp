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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cellgauge/conditional.hpp"
#include "cellgauge/graph.hpp"
#include "cellgauge/metrics.hpp"
#include "cellgauge/reliability.hpp"
#include "cellgauge/report.hpp"
#include "oracles/branch_oracle.hpp"
#include "oracles/nl_corpus.hpp"
#include "oracles/path_oracle.hpp"
#include "support/builders.hpp"
#include "support/conditional_fixtures.hpp"

namespace cg = cellgauge;

namespace {

const std::string kFixtures = CELLGAUGE_FIXTURE_DIR;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << what;
    ok = ok && cond;
  }
};

Outcome dispersion_table() {
  Outcome o;
  const std::pair<double, double> table[] = {{10, 0.0952},  {20, 0.1813},  {50, 0.3935},
                                             {100, 0.6321}, {150, 0.7769}, {200, 0.8647},
                                             {300, 0.9502}};
  for (auto [delta, expected] : table) {
    // Drive the full dispersion path with a single product delta of `delta`.
    std::vector<cg::Delta> d{{static_cast<int>(delta), 1}};
    double dr = cg::dispersion(d, {0.01, cg::DispersionMode::kProduct}).dispersion;
    o.require(std::abs(dr - expected) <= 5e-5,
              "delta " + std::to_string(delta) + " gave " + std::to_string(dr));
  }
  o.detail << "7 rows within 5e-5";
  return o;
}

Outcome bottom_line_rates() {
  Outcome o;
  double e5 = cg::bottom_line_error_rate(0.02, 5);
  double e9 = cg::bottom_line_error_rate(0.02, 9);
  o.require(std::abs(e5 - 0.0961) <= 5e-5, "E(5)=" + std::to_string(e5));
  o.require(std::abs(e9 - 0.1663) <= 5e-5, "E(9)=" + std::to_string(e9));
  auto five = cg::analyze(kFixtures + "/utility_five_cell.json", {});
  auto nine = cg::analyze(kFixtures + "/utility_nine_cell.json", {});
  o.require(five.cascades && five.cascades->size() == 1 &&
                five.cascades->front().reliability.n == 5,
            "five-cell fixture cascade size");
  o.require(nine.cascades && nine.cascades->size() == 1 &&
                nine.cascades->front().reliability.n == 9,
            "nine-cell fixture cascade size");
  if (o.ok) {
    o.detail << "E(5)=" << e5 << " E(9)=" << e9 << "; fixtures n=5, n=9";
  }
  return o;
}

Outcome reachability_oracle() {
  Outcome o;
  auto start = Clock::now();
  std::mt19937 rng(20261014);
  int checked = 0;
  for (int trial = 0; trial < 200 && o.ok; ++trial) {
    auto d = cg::testing::random_dag(rng);
    auto g = cg::build_graph(d.workbook);
    for (cg::NodeId v : g.bottom_line_cells()) {
      const cg::CellAddress& a = g.address(v);
      int index = static_cast<int>(std::find(d.cells.begin(), d.cells.end(), a) - d.cells.begin());
      auto expected = cg::oracle::summarize(d.edges, index);
      auto s = cg::cascade_stats(g, a);
      auto paths = cg::enumerate_paths(g, a, 10000000);
      cg::BigCount lengths = 0;
      int longest = 0;
      for (const auto& p : paths) {
        lengths += static_cast<int>(p.size());
        longest = std::max(longest, static_cast<int>(p.size()));
      }
      const cg::BigCount count = static_cast<long long>(paths.size());
      o.require(cg::reachability(g, a) == count && count == expected.count,
                "path count mismatch in trial " + std::to_string(trial));
      o.require(s.avg_path_length == cg::Rational(lengths, count) &&
                    s.avg_path_length == expected.avg_length,
                "average length mismatch in trial " + std::to_string(trial));
      o.require(s.max_path_length == longest && longest == expected.max_length,
                "max length mismatch in trial " + std::to_string(trial));
      ++checked;
    }
  }
  double secs = seconds_since(start);
  o.require(secs < 10.0, "took " + std::to_string(secs) + " s");
  if (o.ok) o.detail << "200 DAGs, " << checked << " terminals, " << secs << " s";
  return o;
}

Outcome aggregates() {
  Outcome o;
  auto wb = cg::testing::book({{"A1", "1"}, {"A2", "2"}, {"A3", "3"}, {"B1", "=A1+A2+A3"},
                               {"B2", "=B1+A1"}, {"B3", "=B2+B1"}});
  auto g = cg::build_graph(wb);
  auto terminal = cg::testing::at("B3");
  auto starred = cg::testing::at("B2");
  auto s = cg::cascade_stats(g, terminal);
  o.require(s.cell_count == 6, "cell count");
  o.require(s.reachability == 7, "terminal reachability");
  o.require(cg::reachability(g, starred) == 4, "interior reachability");
  o.require(s.avg_reachability == cg::Rational(17, 6), "average reachability");
  o.require(cg::enumerate_paths(g, terminal, 100).size() == 7, "enumerated terminal paths");
  o.require(cg::enumerate_paths(g, starred, 100).size() == 4, "enumerated interior paths");
  std::size_t sum = 0;
  for (const auto& c : s.cells) sum += cg::enumerate_paths(g, c, 100).size();
  o.require(sum == 17, "enumerated reachability sum");
  if (o.ok) o.detail << "R(terminal)=7, R(interior)=4, R_avg=" << cg::to_string(s.avg_reachability);
  return o;
}

Outcome conditional_oracle() {
  Outcome o;
  int fixtures = 0, constructs = 0, max_ifs = 0;
  for (const auto& f : cg::testing::conditional_fixtures()) {
    auto g = cg::build_graph(f.workbook);
    auto found = cg::find_conditionals(f.workbook, g);
    if (found.empty()) continue;
    ++fixtures;
    max_ifs = std::max(max_ifs, static_cast<int>(found.size()));
    cg::oracle::BranchOracle oracle(f.workbook);
    auto base = cg::conditional_complexities(found, {0.0});
    auto tilted = cg::conditional_complexities(found, {0.1});
    for (std::size_t i = 0; i < found.size(); ++i) {
      cg::oracle::IfSite site{found[i].id.cell, found[i].id.path};
      double brute = static_cast<double>(oracle.selections(site).size());
      o.require(base[i] == brute, f.name + ": O=" + std::to_string(base[i]) +
                                      " vs " + std::to_string(brute));
      double sum = found[i].conditionless_branches;
      for (std::size_t m : found[i].nested_or_precedent) sum += tilted[m];
      o.require(std::abs(tilted[i] - std::pow(sum, 1.1)) <= 1e-9, f.name + ": beta=0.1");
      o.require(std::abs(tilted[i] - oracle.complexity(site, 0.1)) <= 1e-9,
                f.name + ": beta=0.1 naive");
      ++constructs;
    }
  }
  o.require(fixtures >= 10, "only " + std::to_string(fixtures) + " fixtures");
  o.require(max_ifs <= 4, "fixture exceeds four IFs");
  if (o.ok) o.detail << fixtures << " fixtures, " << constructs << " constructs";
  return o;
}

Outcome range_linkage() {
  Outcome o;
  struct Case {
    const char* file;
    cg::LinkageStyle style;
    cg::Verdict verdict;
  };
  const Case cases[] = {
      {"range_absolute_ok.csv", cg::LinkageStyle::kAbsolute, cg::Verdict::kOk},
      {"range_relative_ok.csv", cg::LinkageStyle::kRelative, cg::Verdict::kOk},
      {"range_absolute_violation.csv", cg::LinkageStyle::kAbsolute, cg::Verdict::kViolation},
      {"range_relative_violation.csv", cg::LinkageStyle::kRelative, cg::Verdict::kViolation},
  };
  for (const Case& c : cases) {
    auto findings = cg::check_range_linkage(cg::load_workbook(kFixtures + "/" + c.file));
    bool match = findings.size() == 1 && findings[0].ref_style == c.style &&
                 findings[0].verdict == c.verdict;
    if (match && c.style == cg::LinkageStyle::kRelative) {
      match = findings[0].expected_extent == 5 + findings[0].s - 1;
    }
    if (match && c.style == cg::LinkageStyle::kAbsolute) {
      match = findings[0].expected_extent == findings[0].s;
    }
    o.require(match, c.file);
  }
  if (o.ok) o.detail << "2 ok, 2 violation fixtures";
  return o;
}

Outcome reduction() {
  Outcome o;
  cg::AnalysisConfig cfg;
  cfg.reliability.weights = {0, 0, 0, 0, 0};
  cfg.reliability.data_cell_factor = 1.0;
  cfg.reliability.cap = 1.0;
  int cascades = 0;
  double worst = 0.0;
  for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
    const auto ext = entry.path().extension();
    if (ext != ".csv" && ext != ".json") continue;
    cg::WorkbookReport r;
    try {
      r = cg::analyze(entry.path(), cfg);
    } catch (const cg::Error&) {
      continue;
    }
    if (!r.cascades) continue;
    for (const auto& c : *r.cascades) {
      double rel = c.reliability.uniform_e == 0.0
                       ? std::abs(c.reliability.adjusted_e)
                       : std::abs(c.reliability.adjusted_e - c.reliability.uniform_e) /
                             c.reliability.uniform_e;
      worst = std::max(worst, rel);
      ++cascades;
    }
  }
  o.require(cascades > 0, "no cascades");
  o.require(worst <= 1e-12, "relative error " + std::to_string(worst));
  if (o.ok) o.detail << cascades << " cascades, worst relative error " << worst;
  return o;
}

Outcome nl_avg() {
  Outcome o;
  for (const auto& c : cg::oracle::kNlCorpus) {
    cg::Workbook wb;
    wb.add_sheet("Sheet1");
    wb.add_sheet("Data");
    wb.set_formula("Sheet1", 30, 200, c.formula);
    const cg::Cell* cell = wb.find(cg::CellAddress{"Sheet1", 30, 200});
    auto refs = cg::resolve_cell_references(wb, *cell).references;
    auto m = cg::formula_metrics(*cell, refs, {});
    o.require(m.avg_nesting_level == cg::Rational(c.level_sum, c.token_count),
              std::string(c.formula) + " gave " + cg::to_string(m.avg_nesting_level));
  }
  auto worked = cg::classify_tokens(cg::parse_formula("=SUM(A1, MAX(B1,C1))"));
  int sum = 0;
  for (const auto& t : worked) sum += t.nesting_level;
  o.require(cg::Rational(sum, static_cast<int>(worked.size())) == cg::Rational(11, 5), "11/5");
  if (o.ok) o.detail << cg::oracle::kNlCorpus.size() << " formulas exact";
  return o;
}

std::filesystem::path write_large_workbook() {
  nlohmann::json cells = nlohmann::json::array();
  auto ref = [](int col, int row) { return cg::column_name(col) + std::to_string(row); };
  const int rows = 1000;
  for (int r = 1; r <= rows; ++r) {
    cells.push_back({{"ref", ref(1, r)}, {"value", r % 17}});
    cells.push_back({{"ref", ref(2, r)}, {"value", (r * 7) % 23 + 0.5}});
    cells.push_back({{"ref", ref(3, r)}, {"value", r % 3 == 0}});
    cells.push_back({{"ref", ref(4, r)}, {"value", "label" + std::to_string(r)}});
    cells.push_back({{"ref", ref(5, r)}, {"formula", "=A" + std::to_string(r) + "*B" + std::to_string(r)}});
    int lo = std::max(1, r - 4);
    cells.push_back({{"ref", ref(6, r)},
                     {"formula", "=SUM(E" + std::to_string(lo) + ":E" + std::to_string(r) + ")"}});
    cells.push_back({{"ref", ref(7, r)},
                     {"formula", "=IF(C" + std::to_string(r) + ",F" + std::to_string(r) + ",E" +
                                     std::to_string(r) + "/2)"}});
    std::string prev = r > 1 ? "H" + std::to_string(r - 1) : "0";
    cells.push_back({{"ref", ref(8, r)}, {"formula", "=" + prev + "+G" + std::to_string(r)}});
    cells.push_back({{"ref", ref(9, r)},
                     {"formula", "=ROUND(AVERAGE($B$1:$B$10)+Data!A" + std::to_string(r % 50 + 1) + ",2)"}});
    cells.push_back({{"ref", ref(10, r)},
                     {"formula", "=MAX(I" + std::to_string(r) + ",$A$" + std::to_string(r) + ")"}});
  }
  nlohmann::json data = nlohmann::json::array();
  for (int r = 1; r <= 50; ++r) data.push_back({{"ref", ref(1, r)}, {"value", r}});
  nlohmann::json doc = {{"sheets", {{{"name", "Model"}, {"cells", cells}},
                                    {{"name", "Data"}, {"cells", data}}}}};
  auto path = std::filesystem::temp_directory_path() / "cellgauge_acceptance_large.json";
  std::ofstream(path) << doc.dump();
  return path;
}

Outcome determinism_and_scale() {
  Outcome o;
  auto path = write_large_workbook();
  auto start = Clock::now();
  auto first = cg::emit_report(cg::analyze(path, {}), cg::OutputFormat::kJson, false);
  double secs = seconds_since(start);
  auto second = cg::emit_report(cg::analyze(path, {}), cg::OutputFormat::kJson, false);
  auto parsed = nlohmann::json::parse(first);
  std::filesystem::remove(path);
  const std::size_t cells = parsed.at("cells").size();
  o.require(cells >= 10000, "only " + std::to_string(cells) + " cells");
  o.require(secs < 5.0, "took " + std::to_string(secs) + " s");
  o.require(first == second, "JSON differs between runs");
  if (o.ok) o.detail << cells << " cells in " << secs << " s, identical JSON";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"dispersion table", dispersion_table},
      {"bottom-line error rates", bottom_line_rates},
      {"reachability oracle equivalence", reachability_oracle},
      {"path aggregates", aggregates},
      {"conditional complexity oracle", conditional_oracle},
      {"range linkage rules", range_linkage},
      {"reliability reduction", reduction},
      {"NL_Avg exactness", nl_avg},
      {"determinism and scale", determinism_and_scale},
  };
  int failures = 0;
  int number = 0;
  for (const auto& [name, run] : criteria) {
    ++number;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << "exception: " << e.what();
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << number << " (" << name
              << "): " << o.detail.str() << "\n";
    if (!o.ok) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
