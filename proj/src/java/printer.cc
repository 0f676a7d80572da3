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

namespace codevec::java {
namespace {

class Printer {
 public:
  explicit Printer(const Ast& ast) : ast_(ast) {}

  void emit(std::string_view text) {
    if (text.empty()) return;
    if (!out_.empty()) out_ += ' ';
    out_ += text;
  }

  void list(const std::vector<NodeId>& ids, std::size_t begin, std::size_t end,
            std::string_view sep = ",") {
    for (std::size_t i = begin; i < end; ++i) {
      if (i > begin) emit(sep);
      print(ids[i]);
    }
  }

  void print(NodeId id) {
    const AstNode& n = ast_[id];
    for (int p = 0; p < n.parens; ++p) emit("(");
    print_bare(n);
    for (int p = 0; p < n.parens; ++p) emit(")");
  }

  std::string take() { return std::move(out_); }

 private:
  void print_bare(const AstNode& n) {
    const auto& c = n.children;
    switch (n.kind) {
      case NodeKind::kClassOrInterfaceDeclaration: {
        emit(n.op);
        emit("class");
        print(c[0]);
        std::size_t i = 1;
        if (n.shape[0]) {
          emit("extends");
          print(c[i++]);
        }
        if (n.shape[1]) {
          emit("implements");
          list(c, i, i + n.shape[1]);
          i += n.shape[1];
        }
        emit("{");
        for (; i < c.size(); ++i) print(c[i]);
        emit("}");
        return;
      }
      case NodeKind::kFieldDeclaration:
      case NodeKind::kVariableDeclarationExpr:
        emit(n.op);
        print(c[0]);
        list(c, 1, c.size());
        if (n.kind == NodeKind::kFieldDeclaration) emit(";");
        return;
      case NodeKind::kMethodDeclaration:
      case NodeKind::kConstructorDeclaration: {
        emit(n.op);
        std::size_t i = 0;
        if (n.kind == NodeKind::kMethodDeclaration) print(c[i++]);
        print(c[i++]);
        emit("(");
        list(c, i, i + n.shape[0]);
        i += n.shape[0];
        emit(")");
        if (n.shape[1]) {
          emit("throws");
          list(c, i, i + n.shape[1]);
          i += n.shape[1];
        }
        if (n.shape[2]) {
          print(c[i]);
        } else {
          emit(";");
        }
        return;
      }
      case NodeKind::kParameter: {
        emit(n.op);
        const AstNode& type = ast_[c[0]];
        if (n.postfix) {
          const std::string& t = *type.token;
          emit(std::string_view(t).substr(0, t.size() - 2));
          emit("...");
        } else {
          print(c[0]);
        }
        print(c[1]);
        return;
      }
      case NodeKind::kVariableDeclarator:
        print(c[0]);
        if (c.size() > 1) {
          emit("=");
          print(c[1]);
        }
        return;
      case NodeKind::kBlockStmt:
        emit("{");
        for (NodeId s : c) print(s);
        emit("}");
        return;
      case NodeKind::kExpressionStmt:
        print(c[0]);
        emit(";");
        return;
      case NodeKind::kIfStmt:
        emit("if");
        emit("(");
        print(c[0]);
        emit(")");
        print(c[1]);
        if (c.size() > 2) {
          emit("else");
          print(c[2]);
        }
        return;
      case NodeKind::kWhileStmt:
        emit("while");
        emit("(");
        print(c[0]);
        emit(")");
        print(c[1]);
        return;
      case NodeKind::kDoStmt:
        emit("do");
        print(c[0]);
        emit("while");
        emit("(");
        print(c[1]);
        emit(")");
        emit(";");
        return;
      case NodeKind::kForStmt: {
        emit("for");
        emit("(");
        std::size_t i = 0;
        list(c, 0, n.shape[0]);
        i += n.shape[0];
        emit(";");
        if (n.shape[1]) print(c[i++]);
        emit(";");
        list(c, i, i + n.shape[2]);
        i += n.shape[2];
        emit(")");
        print(c[i]);
        return;
      }
      case NodeKind::kForEachStmt: {
        emit("for");
        emit("(");
        const AstNode& var = ast_[c[0]];
        emit(var.op);
        print(var.children[0]);
        print(ast_[var.children[1]].children[0]);
        emit(":");
        print(c[1]);
        emit(")");
        print(c[2]);
        return;
      }
      case NodeKind::kReturnStmt:
        emit("return");
        if (!c.empty()) print(c[0]);
        emit(";");
        return;
      case NodeKind::kBreakStmt:
      case NodeKind::kContinueStmt:
        emit(*n.token);
        emit(";");
        return;
      case NodeKind::kThrowStmt:
        emit("throw");
        print(c[0]);
        emit(";");
        return;
      case NodeKind::kTryStmt: {
        emit("try");
        print(c[0]);
        std::size_t i = 1;
        for (; i < 1u + n.shape[0]; ++i) print(c[i]);
        if (n.shape[1]) {
          emit("finally");
          print(c[i]);
        }
        return;
      }
      case NodeKind::kCatchClause:
        emit("catch");
        emit("(");
        print(c[0]);
        emit(")");
        print(c[1]);
        return;
      case NodeKind::kEmptyStmt:
        emit(";");
        return;
      case NodeKind::kAssignExpr:
      case NodeKind::kBinaryExpr:
        print(c[0]);
        emit(n.op);
        print(c[1]);
        return;
      case NodeKind::kUnaryExpr:
        if (n.postfix) {
          print(c[0]);
          emit(n.op);
        } else {
          emit(n.op);
          print(c[0]);
        }
        return;
      case NodeKind::kConditionalExpr:
        print(c[0]);
        emit("?");
        print(c[1]);
        emit(":");
        print(c[2]);
        return;
      case NodeKind::kMethodCallExpr: {
        std::size_t i = 0;
        if (n.shape[0]) {
          print(c[i++]);
          emit(".");
        }
        print(c[i++]);
        emit("(");
        list(c, i, c.size());
        emit(")");
        return;
      }
      case NodeKind::kFieldAccessExpr:
        print(c[0]);
        emit(".");
        print(c[1]);
        return;
      case NodeKind::kArrayAccessExpr:
        print(c[0]);
        emit("[");
        print(c[1]);
        emit("]");
        return;
      case NodeKind::kObjectCreationExpr:
        emit("new");
        print(c[0]);
        emit("(");
        list(c, 1, c.size());
        emit(")");
        return;
      case NodeKind::kArrayCreationExpr: {
        emit("new");
        print(c[0]);
        std::size_t i = 1;
        for (int d = 0; d < n.shape[0]; ++d) {
          emit("[");
          print(c[i++]);
          emit("]");
        }
        for (int d = 0; d < n.shape[1]; ++d) {
          emit("[");
          emit("]");
        }
        if (n.shape[2]) print(c[i]);
        return;
      }
      case NodeKind::kArrayInitializerExpr:
        emit("{");
        list(c, 0, c.size());
        emit("}");
        return;
      case NodeKind::kCastExpr:
        emit("(");
        print(c[0]);
        emit(")");
        print(c[1]);
        return;
      case NodeKind::kInstanceOfExpr:
        print(c[0]);
        emit("instanceof");
        print(c[1]);
        return;
      default:
        emit(*n.token);
        return;
    }
  }

  const Ast& ast_;
  std::string out_;
};

}  // namespace

std::string print_unit(const SourceUnit& unit) {
  Printer printer(unit.ast);
  if (!unit.package_name.empty()) {
    printer.emit("package");
    printer.emit(unit.package_name);
    printer.emit(";");
  }
  for (const std::string& imp : unit.imports) {
    printer.emit("import");
    printer.emit(imp);
    printer.emit(";");
  }
  for (const ClassDecl& cls : unit.classes) printer.print(cls.node);
  return printer.take();
}

}  // namespace codevec::java
