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
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "cellgauge/errors.hpp"
#include "cellgauge/report.hpp"

namespace cellgauge {

namespace {

using nlohmann::json;

double round6(double x) {
  if (!std::isfinite(x)) return x;
  double r = std::round(x * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // no "-0.0"
}

json big_to_json(const BigCount& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) {
    return json(v.convert_to<std::uint64_t>());
  }
  return json(v.str());
}

BigCount big_from_json(const json& j) {
  if (j.is_number_unsigned()) return BigCount(j.get<std::uint64_t>());
  if (j.is_string()) return BigCount(j.get<std::string>());
  throw FormatError("expected an integer count");
}

CellAddress parse_address(const std::string& text) {
  auto ref = parse_cell_ref(text);
  if (!ref || !ref->sheet) throw FormatError("malformed cell address '" + text + "'");
  return CellAddress{*ref->sheet, ref->column, ref->row};
}

std::string render_full_range(const RangeRef& r) { return render_range(r); }

RangeRef parse_full_range(const std::string& text) {
  auto bang = text.rfind('!');
  if (bang == std::string::npos) throw FormatError("malformed range '" + text + "'");
  auto colon = text.find(':', bang);
  if (colon == std::string::npos) throw FormatError("malformed range '" + text + "'");
  auto start = parse_cell_ref(text.substr(0, colon));
  auto end = parse_cell_ref(text.substr(colon + 1));
  if (!start || !end || !start->sheet) throw FormatError("malformed range '" + text + "'");
  end->sheet = start->sheet;
  return RangeRef{*start, *end};
}

ConstructId parse_construct_id(const std::string& text) {
  ConstructId id;
  auto hash = text.rfind('#');
  id.cell = parse_address(text.substr(0, hash));
  if (hash == std::string::npos) return id;
  std::stringstream path(text.substr(hash + 1));
  std::string part;
  while (std::getline(path, part, '.')) {
    try {
      id.path.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw FormatError("malformed construct id '" + text + "'");
    }
  }
  return id;
}

json config_to_json(const AnalysisConfig& c) {
  const ComplexityWeights& w = c.reliability.weights;
  return json{
      {"alpha", round6(c.dispersion.alpha)},
      {"dispersion_mode", std::string(to_string(c.dispersion.mode))},
      {"beta", round6(c.beta.beta)},
      {"cer", round6(c.reliability.base_cer)},
      {"data_cell_factor", round6(c.reliability.data_cell_factor)},
      {"cap", round6(c.reliability.cap)},
      {"weights",
       {{"tokens", round6(w.tokens)},
        {"depth", round6(w.depth)},
        {"dispersion", round6(w.dispersion)},
        {"decisions", round6(w.decisions)},
        {"span", round6(w.span)}}},
      {"flag_dr", round6(c.flag_dr)},
      {"flag_span", c.flag_span},
      {"top_n", c.top_n},
  };
}

AnalysisConfig config_from_json(const json& j) {
  AnalysisConfig c;
  c.dispersion.alpha = j.at("alpha").get<double>();
  c.dispersion.mode = parse_dispersion_mode(j.at("dispersion_mode").get<std::string>());
  c.beta.beta = j.at("beta").get<double>();
  c.reliability.base_cer = j.at("cer").get<double>();
  c.reliability.data_cell_factor = j.at("data_cell_factor").get<double>();
  c.reliability.cap = j.at("cap").get<double>();
  const json& w = j.at("weights");
  c.reliability.weights = {w.at("tokens").get<double>(), w.at("depth").get<double>(),
                           w.at("dispersion").get<double>(), w.at("decisions").get<double>(),
                           w.at("span").get<double>()};
  c.flag_dr = j.at("flag_dr").get<double>();
  c.flag_span = j.at("flag_span").get<int>();
  c.top_n = j.at("top_n").get<int>();
  return c;
}

json cell_to_json(const CellReport& row) {
  const CellMetrics& m = row.metrics;
  return json{
      {"address", render_address(m.address)},
      {"kind", m.is_formula ? "formula" : "data"},
      {"n_operators", m.n_operators},
      {"n_operands", m.n_operands},
      {"depth_of_nesting", m.depth_of_nesting},
      {"avg_nesting_level", round6(to_double(m.avg_nesting_level))},
      {"avg_nesting_level_exact", to_string(m.avg_nesting_level)},
      {"decision_count", m.decision_count},
      {"n_references", m.n_references},
      {"dispersion", round6(m.dispersion)},
      {"delta_sum", round6(m.delta_sum)},
      {"col_span", m.col_span},
      {"row_span", m.row_span},
      {"cross_sheet_ref_count", m.cross_sheet_ref_count},
      {"mixed_axis_flag", m.mixed_axis_flag},
      {"forward_ref_count", m.forward_ref_count},
      {"cell_error_rate", round6(row.cell_error_rate)},
      {"flagged", row.flagged},
  };
}

CellReport cell_from_json(const json& j) {
  CellReport row;
  CellMetrics& m = row.metrics;
  m.address = parse_address(j.at("address").get<std::string>());
  m.is_formula = j.at("kind").get<std::string>() == "formula";
  m.n_operators = j.at("n_operators").get<int>();
  m.n_operands = j.at("n_operands").get<int>();
  m.depth_of_nesting = j.at("depth_of_nesting").get<int>();
  m.avg_nesting_level = parse_rational(j.at("avg_nesting_level_exact").get<std::string>());
  m.decision_count = j.at("decision_count").get<int>();
  m.n_references = j.at("n_references").get<int>();
  m.dispersion = j.at("dispersion").get<double>();
  m.delta_sum = j.at("delta_sum").get<double>();
  m.col_span = j.at("col_span").get<int>();
  m.row_span = j.at("row_span").get<int>();
  m.cross_sheet_ref_count = j.at("cross_sheet_ref_count").get<int>();
  m.mixed_axis_flag = j.at("mixed_axis_flag").get<bool>();
  m.forward_ref_count = j.at("forward_ref_count").get<int>();
  row.cell_error_rate = j.at("cell_error_rate").get<double>();
  row.flagged = j.at("flagged").get<bool>();
  return row;
}

json cascade_to_json(const CascadeReport& c) {
  json inputs = json::array();
  for (const CellAddress& a : c.stats.input_cells) inputs.push_back(render_address(a));
  json conditionals = json::array();
  for (const ConditionalScore& s : c.conditionals) {
    conditionals.push_back({{"cell", render_construct_id(s.construct)}, {"o_value", round6(s.o_value)}});
  }
  return json{
      {"terminal", render_address(c.stats.terminal)},
      {"bottom_line", c.stats.bottom_line},
      {"cell_count", c.stats.cell_count},
      {"total_paths", big_to_json(c.stats.total_paths)},
      {"avg_reachability", round6(to_double(c.stats.avg_reachability))},
      {"avg_reachability_exact", to_string(c.stats.avg_reachability)},
      {"avg_path_length", round6(to_double(c.stats.avg_path_length))},
      {"avg_path_length_exact", to_string(c.stats.avg_path_length)},
      {"max_path_length", c.stats.max_path_length},
      {"input_cells", std::move(inputs)},
      {"uniform_e", round6(c.reliability.uniform_e)},
      {"adjusted_e", round6(c.reliability.adjusted_e)},
      {"conditionals", std::move(conditionals)},
  };
}

CascadeReport cascade_from_json(const json& j) {
  CascadeReport c;
  c.stats.terminal = parse_address(j.at("terminal").get<std::string>());
  c.stats.bottom_line = j.at("bottom_line").get<bool>();
  c.stats.cell_count = j.at("cell_count").get<int>();
  c.stats.total_paths = big_from_json(j.at("total_paths"));
  c.stats.reachability = c.stats.total_paths;
  c.stats.avg_reachability = parse_rational(j.at("avg_reachability_exact").get<std::string>());
  c.stats.avg_path_length = parse_rational(j.at("avg_path_length_exact").get<std::string>());
  c.stats.max_path_length = j.at("max_path_length").get<int>();
  for (const json& a : j.at("input_cells")) c.stats.input_cells.push_back(parse_address(a.get<std::string>()));
  c.reliability.terminal = c.stats.terminal;
  c.reliability.n = c.stats.cell_count;
  c.reliability.uniform_e = j.at("uniform_e").get<double>();
  c.reliability.adjusted_e = j.at("adjusted_e").get<double>();
  for (const json& s : j.at("conditionals")) {
    c.conditionals.push_back({parse_construct_id(s.at("cell").get<std::string>()),
                              s.at("o_value").get<double>()});
  }
  return c;
}

json modular_to_json(const ModularMetrics& m) {
  json triples = json::array();
  for (const DataBindingTriple& t : m.triples) {
    triples.push_back({{"p", t.setter}, {"q", render_address(t.variable)}, {"r", t.reader}});
  }
  json pairs = json::array();
  for (const auto& [key, count] : m.triple_count_by_pair) {
    pairs.push_back({{"p", key.first}, {"r", key.second}, {"count", count}});
  }
  return json{
      {"triples", std::move(triples)},
      {"triple_count", m.triples.size()},
      {"triple_count_by_pair", std::move(pairs)},
      {"unreferenced_data_pct", round6(m.unreferenced_data_pct)},
      {"module_fan_in", m.module_fan_in},
      {"module_fan_out", m.module_fan_out},
  };
}

ModularMetrics modular_from_json(const json& j) {
  ModularMetrics m;
  for (const json& t : j.at("triples")) {
    m.triples.push_back({t.at("p").get<std::string>(), parse_address(t.at("q").get<std::string>()),
                         t.at("r").get<std::string>()});
  }
  for (const json& p : j.at("triple_count_by_pair")) {
    m.triple_count_by_pair[{p.at("p").get<std::string>(), p.at("r").get<std::string>()}] =
        p.at("count").get<int>();
  }
  m.unreferenced_data_pct = j.at("unreferenced_data_pct").get<double>();
  m.module_fan_in = j.at("module_fan_in").get<std::map<std::string, int>>();
  m.module_fan_out = j.at("module_fan_out").get<std::map<std::string, int>>();
  return m;
}

json finding_to_json(const RangeLinkageFinding& f) {
  return json{
      {"source_range", render_full_range(f.source_range)},
      {"target_range", render_full_range(f.target_range)},
      {"axis", f.vertical ? "vertical" : "horizontal"},
      {"s", f.s},
      {"ref_style", std::string(to_string(f.ref_style))},
      {"expected_extent", f.expected_extent},
      {"actual_extent", f.actual_extent},
      {"verdict", std::string(to_string(f.verdict))},
  };
}

RangeLinkageFinding finding_from_json(const json& j) {
  RangeLinkageFinding f;
  f.source_range = parse_full_range(j.at("source_range").get<std::string>());
  f.target_range = parse_full_range(j.at("target_range").get<std::string>());
  f.vertical = j.at("axis").get<std::string>() == "vertical";
  f.s = j.at("s").get<int>();
  f.ref_style = j.at("ref_style").get<std::string>() == "absolute" ? LinkageStyle::kAbsolute
                                                                   : LinkageStyle::kRelative;
  f.expected_extent = j.at("expected_extent").get<int>();
  f.actual_extent = j.at("actual_extent").get<int>();
  f.verdict = j.at("verdict").get<std::string>() == "ok" ? Verdict::kOk : Verdict::kViolation;
  return f;
}

std::string emit_json(const WorkbookReport& r) {
  json cells = json::array();
  for (const CellReport& c : r.cells) cells.push_back(cell_to_json(c));
  json cascades = nullptr;
  if (r.cascades) {
    cascades = json::array();
    for (const CascadeReport& c : *r.cascades) cascades.push_back(cascade_to_json(c));
  }
  json findings = json::array();
  for (const RangeLinkageFinding& f : r.range_findings) findings.push_back(finding_to_json(f));
  json warnings = json::array();
  for (const Warning& w : r.warnings) {
    warnings.push_back({{"code", w.code}, {"address", w.address}, {"message", w.message}});
  }
  json doc{
      {"meta",
       {{"tool_version", r.tool_version},
        {"input_digest", r.input_digest},
        {"source", r.source},
        {"graph_available", r.cascades.has_value()},
        {"exit_code", r.exit_code}}},
      {"config", config_to_json(r.config)},
      {"cells", std::move(cells)},
      {"cascades", std::move(cascades)},
      {"modular", modular_to_json(r.modular)},
      {"range_findings", std::move(findings)},
      {"warnings", std::move(warnings)},
  };
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Text

std::string fixed(double x, int places) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", places, x);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string emit_text(const WorkbookReport& r, bool color) {
  const char* hot = color ? "\x1b[1;31m" : "";
  const char* reset = color ? "\x1b[0m" : "";
  std::ostringstream out;
  out << "cellgauge " << r.tool_version << "\n";
  out << "source: " << r.source << "\n";
  out << "digest: " << r.input_digest << "\n";
  std::size_t formulas = 0;
  for (const CellReport& c : r.cells) formulas += c.metrics.is_formula ? 1 : 0;
  out << "cells: " << r.cells.size() << "  formulas: " << formulas
      << "  cascades: " << (r.cascades ? std::to_string(r.cascades->size()) : "unavailable")
      << "  warnings: " << r.warnings.size() << "\n\n";

  // Flagged cells first (at most top_n), then everything else, each by risk.
  std::vector<const CellReport*> order;
  for (const CellReport& c : r.cells) order.push_back(&c);
  auto by_risk = [](const CellReport* a, const CellReport* b) {
    if (a->cell_error_rate != b->cell_error_rate) return a->cell_error_rate > b->cell_error_rate;
    return false;
  };
  std::stable_sort(order.begin(), order.end(), by_risk);
  std::vector<const CellReport*> ranked;
  std::vector<const CellReport*> rest;
  for (const CellReport* c : order) {
    (c->flagged && ranked.size() < static_cast<std::size_t>(r.config.top_n) ? ranked : rest).push_back(c);
  }
  ranked.insert(ranked.end(), rest.begin(), rest.end());

  out << "Cell metrics (flagged first, then by adjusted cell error rate)\n";
  out << "  " << pad("flag", 5) << pad("cell", 16) << pad("kind", 8) << pad("N1", 5) << pad("N2", 5)
      << pad("depth", 6) << pad("NL_avg", 8) << pad("dec", 5) << pad("refs", 6) << pad("DR", 8)
      << pad("span", 9) << "e_i\n";
  for (const CellReport* c : ranked) {
    const CellMetrics& m = c->metrics;
    out << "  " << (c->flagged ? hot : "") << pad(c->flagged ? "!" : "", 5)
        << pad(render_address(m.address), 16) << pad(m.is_formula ? "formula" : "data", 8)
        << pad(std::to_string(m.n_operators), 5) << pad(std::to_string(m.n_operands), 5)
        << pad(std::to_string(m.depth_of_nesting), 6)
        << pad(fixed(to_double(m.avg_nesting_level), 4), 8) << pad(std::to_string(m.decision_count), 5)
        << pad(std::to_string(m.n_references), 6) << pad(fixed(m.dispersion, 4), 8)
        << pad(std::to_string(m.col_span) + "x" + std::to_string(m.row_span), 9)
        << fixed(c->cell_error_rate, 4) << (c->flagged ? reset : "") << "\n";
  }
  out << "\n";

  out << "Cascades\n";
  if (!r.cascades) {
    out << "  unavailable: the dependency graph has reference cycles\n";
  } else if (r.cascades->empty()) {
    out << "  none\n";
  } else {
    out << "  " << pad("terminal", 16) << pad("n", 6) << pad("paths", 10) << pad("avg_R", 10)
        << pad("avg_len", 9) << pad("max_len", 8) << pad("E_uniform", 11) << pad("E_adjusted", 11)
        << "O(S)\n";
    for (const CascadeReport& c : *r.cascades) {
      std::string o;
      for (const ConditionalScore& s : c.conditionals) {
        if (!o.empty()) o += ", ";
        o += render_construct_id(s.construct) + "=" + fixed(s.o_value, 4);
      }
      out << "  " << pad(render_address(c.stats.terminal), 16) << pad(std::to_string(c.stats.cell_count), 6)
          << pad(to_string(c.stats.total_paths), 10) << pad(fixed(to_double(c.stats.avg_reachability), 4), 10)
          << pad(fixed(to_double(c.stats.avg_path_length), 4), 9)
          << pad(std::to_string(c.stats.max_path_length), 8) << pad(fixed(c.reliability.uniform_e, 4), 11)
          << pad(fixed(c.reliability.adjusted_e, 4), 11) << (o.empty() ? "-" : o) << "\n";
    }
  }
  out << "\n";

  out << "Range linkage\n";
  if (r.range_findings.empty()) out << "  none\n";
  for (const RangeLinkageFinding& f : r.range_findings) {
    bool bad = f.verdict == Verdict::kViolation;
    out << "  " << (bad ? hot : "") << pad(std::string(to_string(f.verdict)), 10)
        << render_range(f.target_range) << " -> " << render_range(f.source_range) << "  "
        << to_string(f.ref_style) << " s=" << f.s << " expected=" << f.expected_extent
        << " actual=" << f.actual_extent << (bad ? reset : "") << "\n";
  }
  out << "\n";

  out << "Modules\n";
  out << "  data binding triples: " << r.modular.triples.size() << "\n";
  for (const auto& [key, count] : r.modular.triple_count_by_pair) {
    out << "    " << key.first << " -> " << key.second << ": " << count << "\n";
  }
  out << "  unreferenced data: " << fixed(r.modular.unreferenced_data_pct, 2) << "%\n\n";

  out << "Warnings\n";
  if (r.warnings.empty()) out << "  none\n";
  for (const Warning& w : r.warnings) out << "  " << w.code << " " << w.address << ": " << w.message << "\n";
  return out.str();
}

}  // namespace

std::string emit_report(const WorkbookReport& report, OutputFormat format, bool color) {
  return format == OutputFormat::kJson ? emit_json(report) : emit_text(report, color);
}

WorkbookReport report_from_json(std::string_view json_text) {
  try {
    json doc = json::parse(json_text.begin(), json_text.end());
    WorkbookReport r;
    const json& meta = doc.at("meta");
    r.tool_version = meta.at("tool_version").get<std::string>();
    r.input_digest = meta.at("input_digest").get<std::string>();
    r.source = meta.at("source").get<std::string>();
    r.exit_code = meta.at("exit_code").get<int>();
    r.config = config_from_json(doc.at("config"));
    for (const json& c : doc.at("cells")) r.cells.push_back(cell_from_json(c));
    if (!doc.at("cascades").is_null()) {
      r.cascades.emplace();
      for (const json& c : doc.at("cascades")) r.cascades->push_back(cascade_from_json(c));
    }
    r.modular = modular_from_json(doc.at("modular"));
    for (const json& f : doc.at("range_findings")) r.range_findings.push_back(finding_from_json(f));
    for (const json& w : doc.at("warnings")) {
      r.warnings.push_back({w.at("code").get<std::string>(), w.at("address").get<std::string>(),
                            w.at("message").get<std::string>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid report JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid report JSON: ") + e.what());
  }
}

void apply_weights_document(std::string_view json_text, ReliabilityConfig& cfg) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid weights JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("weights document must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number()) throw FormatError("weight '" + key + "' must be a number");
    double v = value.get<double>();
    if (key == "tokens") {
      cfg.weights.tokens = v;
    } else if (key == "depth") {
      cfg.weights.depth = v;
    } else if (key == "dispersion") {
      cfg.weights.dispersion = v;
    } else if (key == "decisions") {
      cfg.weights.decisions = v;
    } else if (key == "span") {
      cfg.weights.span = v;
    } else if (key == "data_cell_factor") {
      cfg.data_cell_factor = v;
    } else if (key == "cap") {
      cfg.cap = v;
    } else {
      throw FormatError("unknown weight '" + key + "'");
    }
  }
}

}  // namespace cellgauge
