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

#include "cellgauge/errors.hpp"
#include "cellgauge/formula.hpp"
#include "cellgauge/numeric.hpp"

namespace cellgauge {

namespace {

void collect(const AstNode& n, int level, std::vector<ClassifiedToken>& out) {
  switch (n.kind) {
    case NodeKind::kNumber:
    case NodeKind::kString:
    case NodeKind::kBoolean:
    case NodeKind::kCellRef:
    case NodeKind::kRangeRef: {
      AstNode leaf = n;
      std::string text = render_formula(leaf).substr(1);
      out.push_back({TokenKind::kOperand, level, std::move(text)});
      return;
    }
    case NodeKind::kUnaryOp:
    case NodeKind::kBinaryOp:
      out.push_back({TokenKind::kOperator, level, n.text});
      for (const AstNode& c : n.children) collect(c, level, out);
      return;
    case NodeKind::kFunctionCall:
      out.push_back({TokenKind::kOperator, level, n.text});
      for (const AstNode& c : n.children) collect(c, level + 1, out);
      return;
  }
}

}  // namespace

std::vector<ClassifiedToken> classify_tokens(const FormulaAst& ast) {
  std::vector<ClassifiedToken> tokens;
  collect(ast.root, 1, tokens);
  return tokens;
}

std::string to_string(const Rational& value) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_string(const BigCount& value) { return value.str(); }

Rational parse_rational(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigCount(text));
    BigCount num(text.substr(0, slash));
    BigCount den(text.substr(slash + 1));
    if (den == 0) throw FormatError("zero denominator in rational '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const FormatError*>(&e) != nullptr) throw;
    throw FormatError("malformed rational '" + text + "'");
  }
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace cellgauge
