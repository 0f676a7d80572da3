// Copyright 2026 The codevec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "codevec/java/parser.h"

#include <algorithm>
#include <array>
#include <optional>
#include <utility>

namespace codevec::java {
namespace {

constexpr std::array<std::string_view, 8> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double"};

constexpr std::array<std::string_view, 12> kModifiers = {
    "public", "private",  "protected", "static",       "final",     "abstract",
    "native", "transient", "volatile", "synchronized", "strictfp", "default"};

constexpr std::array<std::string_view, 12> kAssignOps = {
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set,
              std::string_view text) {
  return std::find(set.begin(), set.end(), text) != set.end();
}

int binary_precedence(std::string_view op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "|") return 3;
  if (op == "^") return 4;
  if (op == "&") return 5;
  if (op == "==" || op == "!=") return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=" ||
      op == "instanceof") {
    return 7;
  }
  if (op == "<<" || op == ">>" || op == ">>>") return 8;
  if (op == "+" || op == "-") return 9;
  if (op == "*" || op == "/" || op == "%") return 10;
  return 0;
}

class Parser {
 public:
  Parser(std::string_view text, SourceUnit& unit)
      : tokens_(tokenize(text)), unit_(unit), ast_(unit.ast) {}

  void parse_compilation_unit() {
    if (accept_word("package")) {
      unit_.package_name = qualified_name();
      expect(";");
    }
    while (at("import")) {
      advance();
      std::string name;
      if (accept_word("static")) name = "static ";
      name += qualified_name();
      if (accept(".")) {
        expect("*");
        name += ".*";
      }
      expect(";");
      unit_.imports.push_back(std::move(name));
    }
    while (!at_end()) {
      if (accept(";")) continue;
      unit_.classes.push_back(class_declaration());
    }
  }

 private:
  // ---- token helpers ----

  const Token& peek(std::size_t k = 0) const {
    const std::size_t i = std::min(pos_ + k, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (t.type != TokenType::kEnd) ++pos_;
    return t;
  }
  bool at_end() const { return peek().type == TokenType::kEnd; }

  static bool is_word_or_op(const Token& t) {
    return t.type == TokenType::kOperator || t.type == TokenType::kKeyword ||
           t.type == TokenType::kIdentifier;
  }
  bool at(std::string_view text, std::size_t k = 0) const {
    const Token& t = peek(k);
    return is_word_or_op(t) && t.text == text;
  }
  bool accept(std::string_view op) {
    if (!at(op)) return false;
    advance();
    return true;
  }
  bool accept_word(std::string_view word) { return accept(word); }
  const Token& expect(std::string_view text) {
    if (!at(text)) {
      fail("expected '" + std::string(text) + "' but found '" +
           describe(peek()) + "'");
    }
    return advance();
  }
  static std::string describe(const Token& t) {
    return t.type == TokenType::kEnd ? "end of file" : std::string(t.text);
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(peek().line, message);
  }
  const Token& expect_identifier() {
    if (peek().type != TokenType::kIdentifier) {
      fail("expected identifier but found '" + describe(peek()) + "'");
    }
    return advance();
  }
  int prev_line() const { return pos_ > 0 ? tokens_[pos_ - 1].line : 1; }

  std::string qualified_name() {
    std::string name(expect_identifier().text);
    while (at(".") && peek(1).type == TokenType::kIdentifier) {
      advance();
      name += '.';
      name += advance().text;
    }
    return name;
  }

  void reject_unsupported() const {
    const Token& t = peek();
    if (t.type != TokenType::kOperator && t.type != TokenType::kKeyword) return;
    if (t.text == "@") fail("annotations are not supported");
    if (t.text == "->") fail("lambda expressions are not supported");
    if (t.text == "::") fail("method references are not supported");
    if (t.text == "switch") fail("switch statements are not supported");
    if (t.text == "interface" || t.text == "enum") {
      fail("only class declarations are supported");
    }
  }

  // ---- node construction ----

  NodeId leaf(NodeKind kind, const Token& tok) {
    AstNode n;
    n.kind = kind;
    n.token = std::string(tok.text);
    n.span = {tok.line, tok.line};
    n.offset = tok.offset;
    n.length = tok.text.size();
    return ast_.add(std::move(n));
  }

  // Leaf spanning tokens [first, last] with canonical text.
  NodeId leaf_range(NodeKind kind, std::string text, std::size_t first,
                    std::size_t last) {
    AstNode n;
    n.kind = kind;
    n.token = std::move(text);
    n.span = {tokens_[first].line, tokens_[last].line};
    n.offset = tokens_[first].offset;
    n.length = tokens_[last].offset + tokens_[last].text.size() -
               tokens_[first].offset;
    return ast_.add(std::move(n));
  }

  NodeId node(NodeKind kind, int start_line,
              std::initializer_list<NodeId> children = {}) {
    AstNode n;
    n.kind = kind;
    n.span = {start_line, prev_line()};
    const NodeId id = ast_.add(std::move(n));
    for (NodeId c : children) {
      if (c != kNoNode) ast_.attach(id, c);
    }
    return id;
  }

  void attach_all(NodeId parent, const std::vector<NodeId>& children) {
    for (NodeId c : children) ast_.attach(parent, c);
  }

  void finish(NodeId id) { ast_[id].span.end_line = prev_line(); }

  // ---- types ----

  // Scans a type starting at token offset k without consuming. Returns the
  // offset one past the type, or nullopt if no type starts there.
  std::optional<std::size_t> scan_type(std::size_t k) const {
    const Token& t = peek(k);
    if (t.type == TokenType::kKeyword && contains(kPrimitiveTypes, t.text)) {
      ++k;
    } else if (t.type == TokenType::kIdentifier) {
      ++k;
      while (at(".", k) && peek(k + 1).type == TokenType::kIdentifier) k += 2;
      if (at("<", k)) return std::nullopt;
    } else {
      return std::nullopt;
    }
    while (at("[", k) && at("]", k + 1)) k += 2;
    return k;
  }

  bool generic_type_ahead(std::size_t k) const {
    if (peek(k).type != TokenType::kIdentifier) return false;
    ++k;
    while (at(".", k) && peek(k + 1).type == TokenType::kIdentifier) k += 2;
    return at("<", k);
  }

  NodeId parse_type() {
    const std::size_t first = pos_;
    if (generic_type_ahead(0)) {
      fail("generic types are not supported");
    }
    const Token& t = peek();
    std::string text;
    NodeKind kind;
    if (t.type == TokenType::kKeyword && contains(kPrimitiveTypes, t.text)) {
      text = std::string(advance().text);
      kind = NodeKind::kPrimitiveType;
    } else if (t.type == TokenType::kIdentifier) {
      text = qualified_name();
      kind = NodeKind::kClassOrInterfaceType;
    } else {
      fail("expected type but found '" + describe(t) + "'");
    }
    while (at("[") && at("]", 1)) {
      advance();
      advance();
      text += "[]";
      kind = NodeKind::kArrayType;
    }
    return leaf_range(kind, std::move(text), first, pos_ - 1);
  }

  std::string modifiers() {
    std::string mods;
    while (true) {
      reject_unsupported();
      const Token& t = peek();
      if (t.type == TokenType::kKeyword && contains(kModifiers, t.text)) {
        if (!mods.empty()) mods += ' ';
        mods += advance().text;
        continue;
      }
      break;
    }
    return mods;
  }

  // ---- declarations ----

  ClassDecl class_declaration() {
    const int start = peek().line;
    const std::string mods = modifiers();
    reject_unsupported();
    expect("class");
    const Token& name_tok = expect_identifier();
    if (at("<")) fail("generic classes are not supported");
    const NodeId decl = node(NodeKind::kClassOrInterfaceDeclaration, start);
    ast_[decl].op = mods;
    ast_.attach(decl, leaf(NodeKind::kSimpleName, name_tok));
    ClassDecl cls;
    cls.name = std::string(name_tok.text);
    cls.node = decl;
    if (accept_word("extends")) {
      ast_.attach(decl, parse_type());
      ast_[decl].shape[0] = 1;
    }
    if (accept_word("implements")) {
      do {
        ast_.attach(decl, parse_type());
        ++ast_[decl].shape[1];
      } while (accept(","));
    }
    expect("{");
    while (!accept("}")) {
      if (at_end()) fail("unterminated class body");
      if (accept(";")) continue;
      member(decl, cls);
    }
    finish(decl);
    cls.span = ast_[decl].span;
    return cls;
  }

  void member(NodeId class_node, ClassDecl& cls) {
    const int start = peek().line;
    const std::string mods = modifiers();
    reject_unsupported();
    if (at("class")) fail("nested classes are not supported");
    if (at("{")) fail("initializer blocks are not supported");
    if (at("<")) fail("generic methods are not supported");

    if (peek().type == TokenType::kIdentifier && peek().text == cls.name &&
        at("(", 1)) {
      const NodeId decl = node(NodeKind::kConstructorDeclaration, start);
      ast_[decl].op = mods;
      const Token& name_tok = advance();
      ast_.attach(decl, leaf(NodeKind::kSimpleName, name_tok));
      method_rest(decl);
      ast_.attach(class_node, decl);
      cls.methods.push_back(make_method(decl, std::string(name_tok.text),
                                        /*is_constructor=*/true));
      return;
    }

    NodeId type;
    if (at("void")) {
      type = leaf(NodeKind::kVoidType, advance());
    } else {
      type = parse_type();
    }
    if (peek().type == TokenType::kIdentifier && at("(", 1)) {
      const NodeId decl = node(NodeKind::kMethodDeclaration, start);
      ast_[decl].op = mods;
      ast_.attach(decl, type);
      const Token& name_tok = advance();
      ast_.attach(decl, leaf(NodeKind::kSimpleName, name_tok));
      method_rest(decl);
      ast_.attach(class_node, decl);
      cls.methods.push_back(make_method(decl, std::string(name_tok.text),
                                        /*is_constructor=*/false));
      return;
    }
    if (ast_[type].kind == NodeKind::kVoidType) fail("expected method name");
    const NodeId field = node(NodeKind::kFieldDeclaration, start, {type});
    ast_[field].op = mods;
    do {
      ast_.attach(field, declarator());
    } while (accept(","));
    expect(";");
    finish(field);
    ast_.attach(class_node, field);
  }

  MethodDecl make_method(NodeId decl, std::string name, bool is_constructor) {
    MethodDecl m;
    m.name = std::move(name);
    m.node = decl;
    m.span = ast_[decl].span;
    m.line_count = m.span.end_line - m.span.start_line + 1;
    m.is_constructor = is_constructor;
    m.has_body = ast_[decl].shape[2] != 0;
    return m;
  }

  // Parameters, throws clause and body, appended to decl.
  void method_rest(NodeId decl) {
    expect("(");
    if (!at(")")) {
      do {
        ast_.attach(decl, parameter());
        ++ast_[decl].shape[0];
      } while (accept(","));
    }
    expect(")");
    if (at("[")) fail("array dimensions after the parameter list");
    if (accept_word("throws")) {
      do {
        ast_.attach(decl, parse_type());
        ++ast_[decl].shape[1];
      } while (accept(","));
    }
    if (accept(";")) {
      finish(decl);
      return;
    }
    ast_.attach(decl, block());
    ast_[decl].shape[2] = 1;
    finish(decl);
  }

  NodeId parameter() {
    const int start = peek().line;
    const std::string mods = modifiers();
    NodeId type = parse_type();
    bool varargs = false;
    if (accept("...")) {
      varargs = true;
      AstNode& t = ast_[type];
      *t.token += "[]";
      t.kind = NodeKind::kArrayType;
      t.length = tokens_[pos_ - 1].offset + 3 - t.offset;
    }
    const Token& name_tok = expect_identifier();
    if (at("[")) fail("C-style array declarators are not supported");
    const NodeId param = node(NodeKind::kParameter, start,
                              {type, leaf(NodeKind::kNameExpr, name_tok)});
    ast_[param].op = mods;
    ast_[param].postfix = varargs;
    return param;
  }

  NodeId declarator() {
    const int start = peek().line;
    const Token& name_tok = expect_identifier();
    if (at("[")) fail("C-style array declarators are not supported");
    const NodeId decl = node(NodeKind::kVariableDeclarator, start,
                             {leaf(NodeKind::kNameExpr, name_tok)});
    if (accept("=")) {
      ast_.attach(decl, at("{") ? array_initializer() : expression());
    }
    finish(decl);
    return decl;
  }

  // Type and declarators of a local declaration, positioned at the type.
  NodeId local_declaration(const std::string& mods, int start) {
    const NodeId type = parse_type();
    const NodeId decl =
        node(NodeKind::kVariableDeclarationExpr, start, {type});
    ast_[decl].op = mods;
    do {
      ast_.attach(decl, declarator());
    } while (accept(","));
    finish(decl);
    return decl;
  }

  bool local_declaration_ahead() const {
    if (at("final")) return true;
    const Token& t = peek();
    if (t.type == TokenType::kKeyword && contains(kPrimitiveTypes, t.text)) {
      return true;
    }
    if (t.type != TokenType::kIdentifier) return false;
    if (generic_type_ahead(0)) fail("generic types are not supported");
    const auto end = scan_type(0);
    return end && peek(*end).type == TokenType::kIdentifier;
  }

  // ---- statements ----

  NodeId block() {
    const Token& open = expect("{");
    const std::size_t open_index = pos_ - 1;
    const int start = open.line;
    std::vector<NodeId> stmts;
    while (!accept("}")) {
      if (at_end()) fail("unterminated block");
      stmts.push_back(statement());
    }
    if (stmts.empty()) {
      return leaf_range(NodeKind::kBlockStmt, "{}", open_index, pos_ - 1);
    }
    const NodeId b = node(NodeKind::kBlockStmt, start);
    attach_all(b, stmts);
    return b;
  }

  NodeId statement() {
    reject_unsupported();
    const Token& t = peek();
    const int start = t.line;
    if (at("{")) return block();
    if (at(";")) return leaf(NodeKind::kEmptyStmt, advance());
    if (t.type == TokenType::kIdentifier && at(":", 1)) {
      fail("labelled statements are not supported");
    }
    if (accept_word("if")) {
      expect("(");
      const NodeId cond = expression();
      expect(")");
      const NodeId then = statement();
      NodeId otherwise = kNoNode;
      if (accept_word("else")) otherwise = statement();
      return node(NodeKind::kIfStmt, start, {cond, then, otherwise});
    }
    if (accept_word("while")) {
      expect("(");
      const NodeId cond = expression();
      expect(")");
      const NodeId body = statement();
      return node(NodeKind::kWhileStmt, start, {cond, body});
    }
    if (accept_word("do")) {
      const NodeId body = statement();
      expect("while");
      expect("(");
      const NodeId cond = expression();
      expect(")");
      expect(";");
      return node(NodeKind::kDoStmt, start, {body, cond});
    }
    if (accept_word("for")) return for_statement(start);
    if (at("return")) {
      const Token& kw = advance();
      if (accept(";")) return leaf(NodeKind::kReturnStmt, kw);
      const NodeId value = expression();
      expect(";");
      return node(NodeKind::kReturnStmt, start, {value});
    }
    if (at("break") || at("continue")) {
      const Token& kw = advance();
      if (peek().type == TokenType::kIdentifier) {
        fail("labelled jumps are not supported");
      }
      expect(";");
      return leaf(kw.text == "break" ? NodeKind::kBreakStmt
                                     : NodeKind::kContinueStmt,
                  kw);
    }
    if (accept_word("throw")) {
      const NodeId value = expression();
      expect(";");
      return node(NodeKind::kThrowStmt, start, {value});
    }
    if (accept_word("try")) return try_statement(start);
    if (at("synchronized") || at("assert") || at("class")) {
      fail("'" + std::string(t.text) + "' statements are not supported");
    }
    if (local_declaration_ahead()) {
      const std::string mods = modifiers();
      const NodeId decl = local_declaration(mods, start);
      expect(";");
      return node(NodeKind::kExpressionStmt, start, {decl});
    }
    const NodeId expr = expression();
    expect(";");
    return node(NodeKind::kExpressionStmt, start, {expr});
  }

  NodeId for_statement(int start) {
    expect("(");
    // for-each: for ([final] Type name : expr)
    {
      std::size_t k = 0;
      if (at("final")) k = 1;
      if (generic_type_ahead(k)) fail("generic types are not supported");
      const auto end = scan_type(k);
      if (end && peek(*end).type == TokenType::kIdentifier &&
          at(":", *end + 1)) {
        const int var_start = peek().line;
        const std::string mods = modifiers();
        const NodeId type = parse_type();
        const int name_line = peek().line;
        const Token& name_tok = expect_identifier();
        const NodeId declarator =
            node(NodeKind::kVariableDeclarator, name_line,
                 {leaf(NodeKind::kNameExpr, name_tok)});
        const NodeId var =
            node(NodeKind::kVariableDeclarationExpr, var_start,
                 {type, declarator});
        ast_[var].op = mods;
        expect(":");
        const NodeId iterable = expression();
        expect(")");
        const NodeId body = statement();
        return node(NodeKind::kForEachStmt, start, {var, iterable, body});
      }
    }
    const NodeId loop = node(NodeKind::kForStmt, start);
    std::vector<NodeId> parts;
    if (!at(";")) {
      if (local_declaration_ahead()) {
        const int var_start = peek().line;
        const std::string mods = modifiers();
        parts.push_back(local_declaration(mods, var_start));
      } else {
        do {
          parts.push_back(expression());
        } while (accept(","));
      }
    }
    ast_[loop].shape[0] = static_cast<std::uint16_t>(parts.size());
    expect(";");
    if (!at(";")) {
      parts.push_back(expression());
      ast_[loop].shape[1] = 1;
    }
    expect(";");
    std::uint16_t updates = 0;
    if (!at(")")) {
      do {
        parts.push_back(expression());
        ++updates;
      } while (accept(","));
    }
    ast_[loop].shape[2] = updates;
    expect(")");
    parts.push_back(statement());
    attach_all(loop, parts);
    finish(loop);
    return loop;
  }

  NodeId try_statement(int start) {
    if (at("(")) fail("try-with-resources is not supported");
    const NodeId stmt = node(NodeKind::kTryStmt, start);
    ast_.attach(stmt, block());
    while (at("catch")) {
      const int catch_start = advance().line;
      expect("(");
      const int param_start = peek().line;
      const std::string mods = modifiers();
      const NodeId type = parse_type();
      if (at("|")) fail("multi-catch is not supported");
      const Token& name_tok = expect_identifier();
      const NodeId param = node(NodeKind::kParameter, param_start,
                                {type, leaf(NodeKind::kNameExpr, name_tok)});
      ast_[param].op = mods;
      expect(")");
      const NodeId body = block();
      ast_.attach(stmt, node(NodeKind::kCatchClause, catch_start,
                             {param, body}));
      ++ast_[stmt].shape[0];
    }
    if (accept_word("finally")) {
      ast_.attach(stmt, block());
      ast_[stmt].shape[1] = 1;
    }
    if (ast_[stmt].shape[0] == 0 && ast_[stmt].shape[1] == 0) {
      fail("try without catch or finally");
    }
    finish(stmt);
    return stmt;
  }

  // ---- expressions ----

  NodeId expression() {
    const int start = peek().line;
    const NodeId lhs = conditional();
    const Token& t = peek();
    if (t.type == TokenType::kOperator && contains(kAssignOps, t.text)) {
      const std::string op(advance().text);
      const NodeId rhs = at("{") ? array_initializer() : expression();
      const NodeId assign = node(NodeKind::kAssignExpr, start, {lhs, rhs});
      ast_[assign].op = op;
      return assign;
    }
    reject_unsupported();
    return lhs;
  }

  NodeId conditional() {
    const int start = peek().line;
    const NodeId cond = binary(1);
    if (!accept("?")) return cond;
    const NodeId then = expression();
    expect(":");
    const NodeId otherwise = conditional_or_lambda();
    return node(NodeKind::kConditionalExpr, start, {cond, then, otherwise});
  }

  NodeId conditional_or_lambda() {
    reject_unsupported();
    return conditional();
  }

  NodeId binary(int min_prec) {
    const int start = peek().line;
    NodeId lhs = unary();
    while (true) {
      const Token& t = peek();
      if (!is_word_or_op(t)) break;
      const int prec = binary_precedence(t.text);
      if (prec == 0 || prec < min_prec) break;
      const std::string op(advance().text);
      if (op == "instanceof") {
        const NodeId type = parse_type();
        lhs = node(NodeKind::kInstanceOfExpr, start, {lhs, type});
        continue;
      }
      const NodeId rhs = binary(prec + 1);
      lhs = node(NodeKind::kBinaryExpr, start, {lhs, rhs});
      ast_[lhs].op = op;
    }
    return lhs;
  }

  bool cast_ahead() const {
    if (!at("(")) return false;
    const Token& t = peek(1);
    if (t.type == TokenType::kKeyword && contains(kPrimitiveTypes, t.text)) {
      const auto end = scan_type(1);
      return end && at(")", *end);
    }
    if (t.type != TokenType::kIdentifier) return false;
    const auto end = scan_type(1);
    if (!end || !at(")", *end)) return false;
    const Token& next = peek(*end + 1);
    switch (next.type) {
      case TokenType::kIdentifier:
      case TokenType::kIntegerLiteral:
      case TokenType::kLongLiteral:
      case TokenType::kFloatLiteral:
      case TokenType::kStringLiteral:
      case TokenType::kCharLiteral:
        return true;
      case TokenType::kKeyword:
        return next.text == "this" || next.text == "new" ||
               next.text == "super";
      case TokenType::kOperator:
        return next.text == "(" || next.text == "!" || next.text == "~";
      case TokenType::kEnd:
        return false;
    }
    return false;
  }

  NodeId unary() {
    const int start = peek().line;
    const Token& t = peek();
    if (t.type == TokenType::kOperator &&
        (t.text == "+" || t.text == "-" || t.text == "!" || t.text == "~" ||
         t.text == "++" || t.text == "--")) {
      const std::string op(advance().text);
      const NodeId operand = unary();
      const NodeId u = node(NodeKind::kUnaryExpr, start, {operand});
      ast_[u].op = op;
      return u;
    }
    if (cast_ahead()) {
      advance();
      const NodeId type = parse_type();
      expect(")");
      const NodeId operand = unary();
      return node(NodeKind::kCastExpr, start, {type, operand});
    }
    return postfix(primary());
  }

  std::vector<NodeId> arguments() {
    expect("(");
    std::vector<NodeId> args;
    if (!at(")")) {
      do {
        args.push_back(expression());
      } while (accept(","));
    }
    expect(")");
    return args;
  }

  NodeId method_call(int start, NodeId scope, NodeId name) {
    const std::vector<NodeId> args = arguments();
    const NodeId call = node(NodeKind::kMethodCallExpr, start, {scope, name});
    ast_[call].shape[0] = scope != kNoNode ? 1 : 0;
    attach_all(call, args);
    finish(call);
    return call;
  }

  NodeId postfix(NodeId expr) {
    const int start = ast_[expr].span.start_line;
    while (true) {
      reject_unsupported();
      if (accept(".")) {
        if (at("class")) fail("class literals are not supported");
        if (at("this") || at("new") || at("<")) {
          fail("qualified this/new and explicit type arguments are not "
               "supported");
        }
        const Token& name_tok = expect_identifier();
        const NodeId name = leaf(NodeKind::kNameExpr, name_tok);
        if (at("(")) {
          expr = method_call(start, expr, name);
        } else {
          expr = node(NodeKind::kFieldAccessExpr, start, {expr, name});
        }
        continue;
      }
      if (at("[")) {
        advance();
        const NodeId index = expression();
        expect("]");
        expr = node(NodeKind::kArrayAccessExpr, start, {expr, index});
        continue;
      }
      if (at("++") || at("--")) {
        const std::string op(advance().text);
        expr = node(NodeKind::kUnaryExpr, start, {expr});
        ast_[expr].op = op;
        ast_[expr].postfix = true;
        continue;
      }
      return expr;
    }
  }

  NodeId primary() {
    reject_unsupported();
    const Token& t = peek();
    const int start = t.line;
    switch (t.type) {
      case TokenType::kIntegerLiteral:
        return leaf(NodeKind::kIntegerLiteralExpr, advance());
      case TokenType::kLongLiteral:
        return leaf(NodeKind::kLongLiteralExpr, advance());
      case TokenType::kFloatLiteral:
        return leaf(NodeKind::kDoubleLiteralExpr, advance());
      case TokenType::kStringLiteral:
        return leaf(NodeKind::kStringLiteralExpr, advance());
      case TokenType::kCharLiteral:
        return leaf(NodeKind::kCharLiteralExpr, advance());
      case TokenType::kIdentifier: {
        if (t.text == "true" || t.text == "false") {
          return leaf(NodeKind::kBooleanLiteralExpr, advance());
        }
        if (t.text == "null") {
          return leaf(NodeKind::kNullLiteralExpr, advance());
        }
        if (at("->", 1)) fail("lambda expressions are not supported");
        const NodeId name = leaf(NodeKind::kNameExpr, advance());
        if (at("(")) return method_call(start, kNoNode, name);
        return name;
      }
      case TokenType::kKeyword: {
        if (t.text == "this" || t.text == "super") {
          const NodeKind kind = t.text == "this" ? NodeKind::kThisExpr
                                                 : NodeKind::kSuperExpr;
          const NodeId self = leaf(kind, advance());
          // Explicit constructor invocation: this(...) / super(...).
          if (at("(")) return method_call(start, kNoNode, self);
          return self;
        }
        if (t.text == "new") return creation();
        if (contains(kPrimitiveTypes, t.text)) {
          fail("class literals are not supported");
        }
        break;
      }
      case TokenType::kOperator:
        if (t.text == "(") {
          advance();
          if (at(")")) fail("lambda expressions are not supported");
          const NodeId inner = expression();
          expect(")");
          if (at("->")) fail("lambda expressions are not supported");
          ++ast_[inner].parens;
          return inner;
        }
        break;
      case TokenType::kEnd:
        break;
    }
    fail("unexpected '" + describe(t) + "' in expression");
  }

  NodeId creation() {
    const int start = advance().line;  // 'new'
    const std::size_t first = pos_;
    if (generic_type_ahead(0)) fail("generic types are not supported");
    const Token& t = peek();
    std::string text;
    NodeKind kind;
    if (t.type == TokenType::kKeyword && contains(kPrimitiveTypes, t.text)) {
      text = std::string(advance().text);
      kind = NodeKind::kPrimitiveType;
    } else {
      text = qualified_name();
      kind = NodeKind::kClassOrInterfaceType;
    }
    if (at("(")) {
      if (kind == NodeKind::kPrimitiveType) fail("cannot instantiate " + text);
      const NodeId type = leaf_range(kind, std::move(text), first, pos_ - 1);
      const std::vector<NodeId> args = arguments();
      if (at("{")) fail("anonymous classes are not supported");
      const NodeId obj = node(NodeKind::kObjectCreationExpr, start, {type});
      attach_all(obj, args);
      finish(obj);
      return obj;
    }
    if (!at("[")) fail("expected '(' or '[' after new " + text);
    const NodeId type = leaf_range(kind, std::move(text), first, pos_ - 1);
    const NodeId arr = node(NodeKind::kArrayCreationExpr, start, {type});
    std::uint16_t sized = 0;
    std::uint16_t empty = 0;
    while (at("[")) {
      advance();
      if (accept("]")) {
        ++empty;
        continue;
      }
      if (empty > 0) fail("array dimension after an empty dimension");
      ast_.attach(arr, expression());
      expect("]");
      ++sized;
    }
    ast_[arr].shape[0] = sized;
    ast_[arr].shape[1] = empty;
    if (at("{")) {
      if (sized > 0) fail("array initializer with explicit dimensions");
      ast_.attach(arr, array_initializer());
      ast_[arr].shape[2] = 1;
    } else if (sized == 0) {
      fail("array creation needs a dimension or an initializer");
    }
    finish(arr);
    return postfix(arr);
  }

  NodeId array_initializer() {
    const Token& open = expect("{");
    const std::size_t open_index = pos_ - 1;
    const int start = open.line;
    std::vector<NodeId> items;
    while (!at("}")) {
      items.push_back(at("{") ? array_initializer() : expression());
      if (!accept(",")) break;
    }
    expect("}");
    if (items.empty()) {
      return leaf_range(NodeKind::kArrayInitializerExpr, "{}", open_index,
                        pos_ - 1);
    }
    const NodeId init = node(NodeKind::kArrayInitializerExpr, start);
    attach_all(init, items);
    return init;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  SourceUnit& unit_;
  Ast& ast_;
};

}  // namespace

SourceUnit parse_file(std::string text, std::string path) {
  SourceUnit unit;
  unit.path = std::move(path);
  unit.text = std::move(text);
  Parser parser(unit.text, unit);
  parser.parse_compilation_unit();
  unit.bindings = resolve_bindings(unit);
  for (ClassDecl& cls : unit.classes) {
    for (std::size_t b = 0; b < unit.bindings.size(); ++b) {
      const VariableBinding& binding = unit.bindings[b];
      if (binding.scope == Scope::kField &&
          binding.scope_span == cls.span) {
        cls.fields.push_back(b);
      }
    }
    for (MethodDecl& m : cls.methods) {
      for (std::size_t b = 0; b < unit.bindings.size(); ++b) {
        const VariableBinding& binding = unit.bindings[b];
        if (binding.scope == Scope::kParam && binding.declaration != kNoNode &&
            unit.ast.is_ancestor(m.node, binding.declaration)) {
          m.params.push_back(b);
        }
      }
    }
  }
  return unit;
}

}  // namespace codevec::java
