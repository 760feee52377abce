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

#include <string>
#include <string_view>
#include <vector>

#include "cellgauge/cell_ref.hpp"

namespace cellgauge {

enum class NodeKind {
  kNumber,
  kString,
  kBoolean,
  kCellRef,
  kRangeRef,
  kUnaryOp,   // text is "-", "+" (prefix) or "%" (postfix)
  kBinaryOp,  // text is the operator symbol; children are {left, right}
  kFunctionCall,
};

/// One node of a formula tree. Which payload fields are meaningful depends
/// on `kind`; the rest stay value-initialized so structural equality works.
struct AstNode {
  NodeKind kind = NodeKind::kNumber;
  std::string text;  // operator symbol, upper-cased function name, or string literal
  double number = 0.0;
  bool boolean = false;
  CellRef ref;
  RangeRef range;
  std::vector<AstNode> children;

  bool operator==(const AstNode&) const = default;

  static AstNode make_number(double value);
  static AstNode make_string(std::string value);
  static AstNode make_boolean(bool value);
  static AstNode make_ref(CellRef ref);
  static AstNode make_range(RangeRef range);
  static AstNode make_unary(std::string op, AstNode child);
  static AstNode make_binary(std::string op, AstNode left, AstNode right);
  static AstNode make_call(std::string name, std::vector<AstNode> args);

  bool is_call(std::string_view name) const {
    return kind == NodeKind::kFunctionCall && text == name;
  }
  bool is_comparison() const;
};

struct FormulaAst {
  AstNode root;
  std::string source;
};

/// Parses formula text starting with "=". Throws SyntaxError.
///
/// Precedence from loosest to tightest: comparison, "&", additive,
/// multiplicative, "^", then prefix minus/plus and postfix "%". All binary
/// operators are left-associative. Function names are case-insensitive and
/// stored upper-cased.
FormulaAst parse_formula(std::string_view text);

/// Canonical text with a leading "=". Parsing the result yields an equal tree.
std::string render_formula(const AstNode& root);
inline std::string render_formula(const FormulaAst& ast) { return render_formula(ast.root); }

enum class TokenKind { kOperator, kOperand };

struct ClassifiedToken {
  TokenKind kind;
  int nesting_level;
  std::string text;

  bool operator==(const ClassifiedToken&) const = default;
};

/// Tokens in pre-order. Literals and references (one token per range) are
/// operands; function names and operator symbols are operators. The nesting
/// level is 1 plus the number of enclosing function calls.
std::vector<ClassifiedToken> classify_tokens(const FormulaAst& ast);

}  // namespace cellgauge
