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

#ifndef CODEVEC_JAVA_AST_H_
#define CODEVEC_JAVA_AST_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace codevec::java {

// Node kinds use JavaParser-style names so that path strings read like the
// ones produced by the reference extractor.
enum class NodeKind : std::uint8_t {
  kClassOrInterfaceDeclaration,
  kFieldDeclaration,
  kMethodDeclaration,
  kConstructorDeclaration,
  kParameter,
  kVariableDeclarationExpr,
  kVariableDeclarator,
  kBlockStmt,
  kExpressionStmt,
  kIfStmt,
  kWhileStmt,
  kDoStmt,
  kForStmt,
  kForEachStmt,
  kReturnStmt,
  kBreakStmt,
  kContinueStmt,
  kThrowStmt,
  kTryStmt,
  kCatchClause,
  kEmptyStmt,
  kAssignExpr,
  kBinaryExpr,
  kUnaryExpr,
  kConditionalExpr,
  kMethodCallExpr,
  kFieldAccessExpr,
  kArrayAccessExpr,
  kObjectCreationExpr,
  kArrayCreationExpr,
  kArrayInitializerExpr,
  kCastExpr,
  kInstanceOfExpr,
  kNameExpr,
  kThisExpr,
  kSuperExpr,
  kIntegerLiteralExpr,
  kLongLiteralExpr,
  kDoubleLiteralExpr,
  kStringLiteralExpr,
  kCharLiteralExpr,
  kBooleanLiteralExpr,
  kNullLiteralExpr,
  kPrimitiveType,
  kClassOrInterfaceType,
  kArrayType,
  kVoidType,
  kSimpleName,
};

std::string_view kind_name(NodeKind kind);

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = UINT32_MAX;

// 1-based inclusive line range.
struct Span {
  int start_line = 0;
  int end_line = 0;

  bool contains(const Span& other) const {
    return start_line <= other.start_line && other.end_line <= end_line;
  }
  friend bool operator==(const Span&, const Span&) = default;
};

struct AstNode {
  NodeKind kind{};
  // Present iff the node is a leaf.
  std::optional<std::string> token;
  std::vector<NodeId> children;
  NodeId parent = kNoNode;
  Span span;
  // Byte range of the leaf's token in the source text; zero for inner nodes
  // and for synthetic leaves such as an empty block.
  std::size_t offset = 0;
  std::size_t length = 0;

  // Attributes kept only so the tree can be printed back to source. They do
  // not participate in path strings.
  std::string op;             // operator, or space-separated modifiers
  std::uint16_t parens = 0;   // number of enclosing parentheses
  std::array<std::uint16_t, 3> shape{};  // per-kind child layout
  bool postfix = false;

  bool is_leaf() const { return children.empty(); }
};

// Arena-allocated tree. Node ids are stable for the lifetime of the Ast and
// survive copies, so bindings can refer to leaves by id.
class Ast {
 public:
  NodeId add(AstNode node);
  void attach(NodeId parent, NodeId child);

  const AstNode& operator[](NodeId id) const { return nodes_[id]; }
  AstNode& operator[](NodeId id) { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  // Leaves under root in source (pre-order) order.
  std::vector<NodeId> leaves(NodeId root) const;
  // Position of child among its parent's children.
  std::size_t child_index(NodeId child) const;
  bool is_ancestor(NodeId ancestor, NodeId node) const;

 private:
  std::vector<AstNode> nodes_;
};

struct MethodDecl {
  std::string name;
  // The full MethodDeclaration (or ConstructorDeclaration) subtree; path
  // contexts are extracted over this node.
  NodeId node = kNoNode;
  // Indices into SourceUnit::bindings.
  std::vector<std::size_t> params;
  int line_count = 1;
  Span span;
  bool is_constructor = false;
  bool has_body = true;
};

struct ClassDecl {
  std::string name;
  NodeId node = kNoNode;
  std::vector<MethodDecl> methods;
  std::vector<std::size_t> fields;
  Span span;
};

enum class Scope : std::uint8_t { kParam, kLocal, kField };

std::string_view scope_name(Scope scope);

struct VariableBinding {
  std::string name;
  Scope scope = Scope::kLocal;
  // nullopt is the unk sentinel: the declaration could not be found.
  std::optional<std::string> declared_type;
  // NameExpr leaves, in source order. The declaring leaf comes first when
  // the declaration exists.
  std::vector<NodeId> occurrences;
  NodeId declaration = kNoNode;
  Span scope_span;
};

struct SourceUnit {
  std::string path;
  std::string text;
  Ast ast;
  std::string package_name;
  std::vector<std::string> imports;
  std::vector<ClassDecl> classes;
  std::vector<VariableBinding> bindings;
};

}  // namespace codevec::java

#endif  // CODEVEC_JAVA_AST_H_
