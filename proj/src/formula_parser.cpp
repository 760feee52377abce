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

#include <cctype>
#include <cmath>
#include <charconv>
#include <cstdlib>
#include <string>
#include <utility>

#include "cellgauge/errors.hpp"
#include "cellgauge/formula.hpp"

namespace cellgauge {

AstNode AstNode::make_number(double value) {
  AstNode n;
  n.kind = NodeKind::kNumber;
  n.number = value;
  return n;
}

AstNode AstNode::make_string(std::string value) {
  AstNode n;
  n.kind = NodeKind::kString;
  n.text = std::move(value);
  return n;
}

AstNode AstNode::make_boolean(bool value) {
  AstNode n;
  n.kind = NodeKind::kBoolean;
  n.boolean = value;
  return n;
}

AstNode AstNode::make_ref(CellRef ref) {
  AstNode n;
  n.kind = NodeKind::kCellRef;
  n.ref = std::move(ref);
  return n;
}

AstNode AstNode::make_range(RangeRef range) {
  AstNode n;
  n.kind = NodeKind::kRangeRef;
  n.range = normalize(std::move(range));
  return n;
}

AstNode AstNode::make_unary(std::string op, AstNode child) {
  AstNode n;
  n.kind = NodeKind::kUnaryOp;
  n.text = std::move(op);
  n.children.push_back(std::move(child));
  return n;
}

AstNode AstNode::make_binary(std::string op, AstNode left, AstNode right) {
  AstNode n;
  n.kind = NodeKind::kBinaryOp;
  n.text = std::move(op);
  n.children.push_back(std::move(left));
  n.children.push_back(std::move(right));
  return n;
}

AstNode AstNode::make_call(std::string name, std::vector<AstNode> args) {
  AstNode n;
  n.kind = NodeKind::kFunctionCall;
  for (char& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  n.text = std::move(name);
  n.children = std::move(args);
  return n;
}

bool AstNode::is_comparison() const {
  return kind == NodeKind::kBinaryOp &&
         (text == "=" || text == "<>" || text == "<" || text == "<=" || text == ">" ||
          text == ">=");
}

namespace {

constexpr int kMaxDepth = 256;

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  AstNode parse() {
    pos_ = 1;  // past "="
    skip_ws();
    if (at_end()) throw SyntaxError(SyntaxErrorKind::kEmptyFormula, pos_, "empty formula");
    AstNode root = comparison();
    skip_ws();
    if (!at_end()) {
      if (peek() == ')') unbalanced("unmatched ')'");
      fail("unexpected character '" + std::string(1, peek()) + "'");
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(SyntaxErrorKind::kMalformed, pos_,
                      msg + " at offset " + std::to_string(pos_));
  }
  [[noreturn]] void unbalanced(const std::string& msg) const {
    throw SyntaxError(SyntaxErrorKind::kUnbalancedParens, pos_,
                      msg + " at offset " + std::to_string(pos_));
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) parser.fail("expression nested too deeply");
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  AstNode comparison() {
    AstNode left = concatenation();
    for (;;) {
      skip_ws();
      std::string op;
      char c = peek();
      if (c == '=') {
        op = "=";
      } else if (c == '<') {
        op = peek(1) == '>' ? "<>" : peek(1) == '=' ? "<=" : "<";
      } else if (c == '>') {
        op = peek(1) == '=' ? ">=" : ">";
      } else {
        return left;
      }
      pos_ += op.size();
      left = AstNode::make_binary(op, std::move(left), concatenation());
    }
  }

  AstNode concatenation() {
    AstNode left = additive();
    for (;;) {
      skip_ws();
      if (peek() != '&') return left;
      ++pos_;
      left = AstNode::make_binary("&", std::move(left), additive());
    }
  }

  AstNode additive() {
    AstNode left = multiplicative();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') return left;
      ++pos_;
      left = AstNode::make_binary(std::string(1, c), std::move(left), multiplicative());
    }
  }

  AstNode multiplicative() {
    AstNode left = power();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '*' && c != '/') return left;
      ++pos_;
      left = AstNode::make_binary(std::string(1, c), std::move(left), power());
    }
  }

  AstNode power() {
    AstNode left = unary();
    for (;;) {
      skip_ws();
      if (peek() != '^') return left;
      ++pos_;
      left = AstNode::make_binary("^", std::move(left), unary());
    }
  }

  AstNode unary() {
    DepthGuard guard(*this);
    skip_ws();
    char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      return AstNode::make_unary(std::string(1, c), unary());
    }
    AstNode operand = primary();
    for (;;) {
      skip_ws();
      if (peek() != '%') return operand;
      ++pos_;
      operand = AstNode::make_unary("%", std::move(operand));
    }
  }

  AstNode primary() {
    DepthGuard guard(*this);
    skip_ws();
    if (at_end()) fail("expected an operand, found end of formula");
    char c = peek();
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      AstNode inner = comparison();
      skip_ws();
      if (at_end()) {
        pos_ = open;
        unbalanced("unclosed '('");
      }
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '"') return string_literal();
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) return number_literal();
    if (c == '\'') {
      std::string sheet = quoted_sheet();
      return reference_after_sheet(std::move(sheet));
    }
    if (c == '$' || is_ident_start(c)) return name_or_reference();
    if (c == ')') unbalanced("unexpected ')'");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  AstNode string_literal() {
    std::size_t open = pos_;
    ++pos_;
    std::string value;
    for (;;) {
      if (at_end()) {
        pos_ = open;
        fail("unterminated string literal");
      }
      char c = text_[pos_++];
      if (c == '"') {
        if (peek() == '"') {
          value.push_back('"');
          ++pos_;
          continue;
        }
        return AstNode::make_string(std::move(value));
      }
      value.push_back(c);
    }
  }

  AstNode number_literal() {
    std::size_t begin = pos_;
    while (is_digit(peek())) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (is_digit(peek())) ++pos_;
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
      pos_ += 2;
      while (is_digit(peek())) ++pos_;
    }
    if (is_ident_char(peek())) fail("malformed number");
    std::string literal(text_.substr(begin, pos_ - begin));
    char* end = nullptr;
    double value = std::strtod(literal.c_str(), &end);
    if (end != literal.c_str() + literal.size() || !std::isfinite(value)) {
      pos_ = begin;
      fail("malformed number");
    }
    return AstNode::make_number(value);
  }

  std::string quoted_sheet() {
    std::size_t open = pos_;
    ++pos_;
    std::string name;
    for (;;) {
      if (at_end()) {
        pos_ = open;
        fail("unterminated sheet name");
      }
      char c = text_[pos_++];
      if (c == '\'') {
        if (peek() == '\'') {
          name.push_back('\'');
          ++pos_;
          continue;
        }
        break;
      }
      name.push_back(c);
    }
    if (name.empty()) {
      pos_ = open;
      fail("empty sheet name");
    }
    if (peek() != '!') fail("expected '!' after sheet name");
    ++pos_;
    return name;
  }

  // Reference immediately after "Sheet!".
  AstNode reference_after_sheet(std::string sheet) {
    auto m = detail::match_a1(text_, pos_);
    if (!m || is_ident_char(peek(m->length)) || peek(m->length) == '(') {
      fail("expected a cell reference after sheet name");
    }
    pos_ += m->length;
    m->ref.sheet = std::move(sheet);
    return maybe_range(std::move(m->ref));
  }

  AstNode maybe_range(CellRef start) {
    std::size_t save = pos_;
    skip_ws();
    if (peek() != ':') {
      pos_ = save;
      return AstNode::make_ref(std::move(start));
    }
    ++pos_;
    skip_ws();
    std::optional<std::string> end_sheet;
    if (peek() == '\'') {
      end_sheet = quoted_sheet();
    } else {
      std::size_t w = pos_;
      while (w < text_.size() && is_ident_char(text_[w])) ++w;
      if (w < text_.size() && text_[w] == '!' && w > pos_) {
        end_sheet = std::string(text_.substr(pos_, w - pos_));
        pos_ = w + 1;
      }
    }
    auto m = detail::match_a1(text_, pos_);
    if (!m || is_ident_char(peek(m->length)) || peek(m->length) == '(') {
      fail("expected a cell reference after ':'");
    }
    if (end_sheet && end_sheet != start.sheet) fail("range corners on different sheets");
    pos_ += m->length;
    return AstNode::make_range(RangeRef{std::move(start), std::move(m->ref)});
  }

  AstNode name_or_reference() {
    // A cell reference wins unless the word continues, opens a call, or names a sheet.
    if (auto m = detail::match_a1(text_, pos_)) {
      char next = peek(m->length);
      if (!is_ident_char(next) && next != '!' && next != '(' && next != '$') {
        std::size_t after = pos_ + m->length;
        while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after])))
          ++after;
        if (after >= text_.size() || text_[after] != '(') {
          pos_ += m->length;
          return maybe_range(std::move(m->ref));
        }
      }
    }
    if (peek() == '$') fail("malformed absolute reference");
    std::size_t begin = pos_;
    while (is_ident_char(peek())) ++pos_;
    std::string word(text_.substr(begin, pos_ - begin));
    if (peek() == '!') {
      ++pos_;
      return reference_after_sheet(std::move(word));
    }
    skip_ws();
    if (peek() == '(') return call(std::move(word), begin);
    std::string upper = word;
    for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (upper == "TRUE") return AstNode::make_boolean(true);
    if (upper == "FALSE") return AstNode::make_boolean(false);
    pos_ = begin;
    fail("unknown name '" + word + "'");
  }

  AstNode call(std::string name, std::size_t name_pos) {
    DepthGuard guard(*this);
    ++pos_;  // '('
    std::vector<AstNode> args;
    skip_ws();
    if (peek() == ')') {
      ++pos_;
      return AstNode::make_call(std::move(name), std::move(args));
    }
    for (;;) {
      skip_ws();
      if (at_end()) {
        pos_ = name_pos;
        unbalanced("unclosed call to " + name);
      }
      if (peek() == ',' || peek() == ')') fail("missing function argument");
      args.push_back(comparison());
      skip_ws();
      if (at_end()) {
        pos_ = name_pos;
        unbalanced("unclosed call to " + name);
      }
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ')') {
        ++pos_;
        return AstNode::make_call(std::move(name), std::move(args));
      }
      fail("expected ',' or ')'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

int precedence(const AstNode& n) {
  switch (n.kind) {
    case NodeKind::kBinaryOp:
      if (n.is_comparison()) return 1;
      if (n.text == "&") return 2;
      if (n.text == "+" || n.text == "-") return 3;
      if (n.text == "*" || n.text == "/") return 4;
      return 5;  // ^
    case NodeKind::kUnaryOp:
      return 6;
    default:
      return 7;
  }
}

std::string render_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc() ? std::string(buf, end) : std::string("0");
}

void render(const AstNode& n, std::string& out) {
  auto child = [&out](const AstNode& c, bool parens) {
    if (parens) out += '(';
    render(c, out);
    if (parens) out += ')';
  };
  switch (n.kind) {
    case NodeKind::kNumber:
      out += render_number(n.number);
      break;
    case NodeKind::kString:
      out += '"';
      for (char c : n.text) {
        out += c;
        if (c == '"') out += '"';
      }
      out += '"';
      break;
    case NodeKind::kBoolean:
      out += n.boolean ? "TRUE" : "FALSE";
      break;
    case NodeKind::kCellRef:
      out += render_ref(n.ref);
      break;
    case NodeKind::kRangeRef:
      out += render_range(n.range);
      break;
    case NodeKind::kUnaryOp: {
      const AstNode& operand = n.children.front();
      if (n.text == "%") {
        // A prefix operand must be wrapped so "%" does not bind inside it.
        child(operand, precedence(operand) < 7 &&
                           !(operand.kind == NodeKind::kUnaryOp && operand.text == "%"));
        out += '%';
      } else {
        out += n.text;
        child(operand, precedence(operand) < 6);
      }
      break;
    }
    case NodeKind::kBinaryOp: {
      int p = precedence(n);
      child(n.children[0], precedence(n.children[0]) < p);
      out += n.text;
      child(n.children[1], precedence(n.children[1]) <= p);
      break;
    }
    case NodeKind::kFunctionCall:
      out += n.text;
      out += '(';
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i > 0) out += ',';
        render(n.children[i], out);
      }
      out += ')';
      break;
  }
}

}  // namespace

FormulaAst parse_formula(std::string_view text) {
  if (text.empty()) throw SyntaxError(SyntaxErrorKind::kEmptyFormula, 0, "empty formula");
  if (text.front() != '=') {
    throw SyntaxError(SyntaxErrorKind::kMalformed, 0, "formula must start with '='");
  }
  Parser parser(text);
  return FormulaAst{parser.parse(), std::string(text)};
}

std::string render_formula(const AstNode& root) {
  std::string out = "=";
  render(root, out);
  return out;
}

}  // namespace cellgauge
