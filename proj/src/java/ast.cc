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

#include "codevec/java/ast.h"

#include <stdexcept>

namespace codevec::java {

std::string_view kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::kClassOrInterfaceDeclaration:
      return "ClassOrInterfaceDeclaration";
    case NodeKind::kFieldDeclaration: return "FieldDeclaration";
    case NodeKind::kMethodDeclaration: return "MethodDeclaration";
    case NodeKind::kConstructorDeclaration: return "ConstructorDeclaration";
    case NodeKind::kParameter: return "Parameter";
    case NodeKind::kVariableDeclarationExpr: return "VariableDeclarationExpr";
    case NodeKind::kVariableDeclarator: return "VariableDeclarator";
    case NodeKind::kBlockStmt: return "BlockStmt";
    case NodeKind::kExpressionStmt: return "ExpressionStmt";
    case NodeKind::kIfStmt: return "IfStmt";
    case NodeKind::kWhileStmt: return "WhileStmt";
    case NodeKind::kDoStmt: return "DoStmt";
    case NodeKind::kForStmt: return "ForStmt";
    case NodeKind::kForEachStmt: return "ForEachStmt";
    case NodeKind::kReturnStmt: return "ReturnStmt";
    case NodeKind::kBreakStmt: return "BreakStmt";
    case NodeKind::kContinueStmt: return "ContinueStmt";
    case NodeKind::kThrowStmt: return "ThrowStmt";
    case NodeKind::kTryStmt: return "TryStmt";
    case NodeKind::kCatchClause: return "CatchClause";
    case NodeKind::kEmptyStmt: return "EmptyStmt";
    case NodeKind::kAssignExpr: return "AssignExpr";
    case NodeKind::kBinaryExpr: return "BinaryExpr";
    case NodeKind::kUnaryExpr: return "UnaryExpr";
    case NodeKind::kConditionalExpr: return "ConditionalExpr";
    case NodeKind::kMethodCallExpr: return "MethodCallExpr";
    case NodeKind::kFieldAccessExpr: return "FieldAccessExpr";
    case NodeKind::kArrayAccessExpr: return "ArrayAccessExpr";
    case NodeKind::kObjectCreationExpr: return "ObjectCreationExpr";
    case NodeKind::kArrayCreationExpr: return "ArrayCreationExpr";
    case NodeKind::kArrayInitializerExpr: return "ArrayInitializerExpr";
    case NodeKind::kCastExpr: return "CastExpr";
    case NodeKind::kInstanceOfExpr: return "InstanceOfExpr";
    case NodeKind::kNameExpr: return "NameExpr";
    case NodeKind::kThisExpr: return "ThisExpr";
    case NodeKind::kSuperExpr: return "SuperExpr";
    case NodeKind::kIntegerLiteralExpr: return "IntegerLiteralExpr";
    case NodeKind::kLongLiteralExpr: return "LongLiteralExpr";
    case NodeKind::kDoubleLiteralExpr: return "DoubleLiteralExpr";
    case NodeKind::kStringLiteralExpr: return "StringLiteralExpr";
    case NodeKind::kCharLiteralExpr: return "CharLiteralExpr";
    case NodeKind::kBooleanLiteralExpr: return "BooleanLiteralExpr";
    case NodeKind::kNullLiteralExpr: return "NullLiteralExpr";
    case NodeKind::kPrimitiveType: return "PrimitiveType";
    case NodeKind::kClassOrInterfaceType: return "ClassOrInterfaceType";
    case NodeKind::kArrayType: return "ArrayType";
    case NodeKind::kVoidType: return "VoidType";
    case NodeKind::kSimpleName: return "SimpleName";
  }
  return "Unknown";
}

std::string_view scope_name(Scope scope) {
  switch (scope) {
    case Scope::kParam: return "param";
    case Scope::kLocal: return "local";
    case Scope::kField: return "field";
  }
  return "local";
}

NodeId Ast::add(AstNode node) {
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size() - 1);
}

void Ast::attach(NodeId parent, NodeId child) {
  nodes_[parent].children.push_back(child);
  nodes_[child].parent = parent;
}

std::vector<NodeId> Ast::leaves(NodeId root) const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const AstNode& n = nodes_[id];
    if (n.is_leaf()) {
      out.push_back(id);
      continue;
    }
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
      stack.push_back(*it);
    }
  }
  return out;
}

std::size_t Ast::child_index(NodeId child) const {
  const NodeId parent = nodes_[child].parent;
  if (parent == kNoNode) return 0;
  const auto& siblings = nodes_[parent].children;
  for (std::size_t i = 0; i < siblings.size(); ++i) {
    if (siblings[i] == child) return i;
  }
  throw std::logic_error("child not registered with its parent");
}

bool Ast::is_ancestor(NodeId ancestor, NodeId node) const {
  for (NodeId cur = node; cur != kNoNode; cur = nodes_[cur].parent) {
    if (cur == ancestor) return true;
  }
  return false;
}

}  // namespace codevec::java
