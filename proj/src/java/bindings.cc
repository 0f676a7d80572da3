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

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_map>

#include "codevec/java/parser.h"

namespace codevec::java {
namespace {

class Resolver {
 public:
  explicit Resolver(const SourceUnit& unit) : unit_(unit), ast_(unit.ast) {}

  std::vector<VariableBinding> run() {
    for (const ClassDecl& cls : unit_.classes) resolve_class(cls);
    return sorted();
  }

 private:
  struct Frame {
    Span span;
    std::unordered_map<std::string, std::size_t> names;
  };

  const std::string& token(NodeId id) const { return *ast_[id].token; }

  std::size_t declare(NodeId name_leaf, Scope scope, NodeId type_leaf,
                      Span scope_span) {
    VariableBinding b;
    b.name = token(name_leaf);
    b.scope = scope;
    b.declared_type = token(type_leaf);
    b.declaration = name_leaf;
    b.occurrences.push_back(name_leaf);
    b.scope_span = scope_span;
    bindings_.push_back(std::move(b));
    return bindings_.size() - 1;
  }

  void resolve_class(const ClassDecl& cls) {
    class_name_ = cls.name;
    class_span_ = cls.span;
    fields_.clear();
    unresolved_fields_.clear();
    frames_.clear();

    const AstNode& decl = ast_[cls.node];
    for (NodeId member : decl.children) {
      const AstNode& m = ast_[member];
      if (m.kind != NodeKind::kFieldDeclaration) continue;
      const NodeId type = m.children[0];
      for (std::size_t i = 1; i < m.children.size(); ++i) {
        const NodeId name = ast_[m.children[i]].children[0];
        fields_[token(name)] = declare(name, Scope::kField, type, cls.span);
      }
    }
    for (NodeId member : decl.children) {
      const AstNode& m = ast_[member];
      switch (m.kind) {
        case NodeKind::kFieldDeclaration:
          for (std::size_t i = 1; i < m.children.size(); ++i) {
            const AstNode& d = ast_[m.children[i]];
            if (d.children.size() > 1) visit(d.children[1]);
          }
          break;
        case NodeKind::kMethodDeclaration:
        case NodeKind::kConstructorDeclaration:
          resolve_method(member);
          break;
        default:
          break;
      }
    }
  }

  void resolve_method(NodeId method) {
    const AstNode& m = ast_[method];
    frames_.push_back({m.span, {}});
    for (NodeId child : m.children) {
      const AstNode& c = ast_[child];
      if (c.kind == NodeKind::kParameter) {
        const NodeId name = c.children[1];
        frames_.back().names[token(name)] =
            declare(name, Scope::kParam, c.children[0], m.span);
      } else if (c.kind == NodeKind::kBlockStmt) {
        visit(child);
      }
    }
    frames_.pop_back();
  }

  std::size_t* lookup(const std::string& name) {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
      auto found = it->names.find(name);
      if (found != it->names.end()) return &found->second;
    }
    auto field = fields_.find(name);
    if (field != fields_.end()) return &field->second;
    return nullptr;
  }

  void add_occurrence(std::size_t binding, NodeId leaf) {
    bindings_[binding].occurrences.push_back(leaf);
  }

  std::size_t unresolved_field(const std::string& name) {
    auto it = unresolved_fields_.find(name);
    if (it != unresolved_fields_.end()) return it->second;
    VariableBinding b;
    b.name = name;
    b.scope = Scope::kField;
    b.scope_span = class_span_;
    bindings_.push_back(std::move(b));
    unresolved_fields_[name] = bindings_.size() - 1;
    return bindings_.size() - 1;
  }

  void resolve_member_of_this(NodeId name_leaf) {
    const std::string& name = token(name_leaf);
    auto field = fields_.find(name);
    add_occurrence(field != fields_.end() ? field->second
                                          : unresolved_field(name),
                   name_leaf);
  }

  void visit_scoped(NodeId id) {
    frames_.push_back({ast_[id].span, {}});
    for (NodeId child : ast_[id].children) visit(child);
    frames_.pop_back();
  }

  void visit(NodeId id) {
    const AstNode& n = ast_[id];
    switch (n.kind) {
      case NodeKind::kBlockStmt:
      case NodeKind::kForStmt:
      case NodeKind::kForEachStmt:
        visit_scoped(id);
        return;
      case NodeKind::kCatchClause: {
        frames_.push_back({n.span, {}});
        const AstNode& param = ast_[n.children[0]];
        const NodeId name = param.children[1];
        frames_.back().names[token(name)] =
            declare(name, Scope::kLocal, param.children[0], n.span);
        visit(n.children[1]);
        frames_.pop_back();
        return;
      }
      case NodeKind::kVariableDeclarationExpr: {
        const NodeId type = n.children[0];
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          const AstNode& d = ast_[n.children[i]];
          const NodeId name = d.children[0];
          Frame& frame = frames_.back();
          const Span scope{ast_[name].span.start_line, frame.span.end_line};
          frame.names[token(name)] = declare(name, Scope::kLocal, type, scope);
          if (d.children.size() > 1) visit(d.children[1]);
        }
        return;
      }
      case NodeKind::kFieldAccessExpr: {
        const NodeId scope = n.children[0];
        const NodeId member = n.children[1];
        visit(scope);
        const AstNode& s = ast_[scope];
        if (s.kind == NodeKind::kThisExpr) {
          resolve_member_of_this(member);
        } else if (s.kind == NodeKind::kNameExpr && s.parens == 0) {
          // other.x where other is declared with this class's type.
          const std::size_t* b = lookup(*s.token);
          if (b && bindings_[*b].declared_type == class_name_ &&
              fields_.count(token(member))) {
            add_occurrence(fields_.at(token(member)), member);
          }
        }
        return;
      }
      case NodeKind::kMethodCallExpr: {
        const bool has_scope = n.shape[0] != 0;
        std::size_t first_arg = 1;
        if (has_scope) {
          visit(n.children[0]);
          first_arg = 2;
        }
        for (std::size_t i = first_arg; i < n.children.size(); ++i) {
          visit(n.children[i]);
        }
        return;
      }
      case NodeKind::kNameExpr: {
        const std::string& name = *n.token;
        if (std::size_t* b = lookup(name)) {
          add_occurrence(*b, id);
          return;
        }
        const AstNode& parent = ast_[n.parent];
        const bool is_access_scope =
            (parent.kind == NodeKind::kFieldAccessExpr ||
             (parent.kind == NodeKind::kMethodCallExpr &&
              parent.shape[0] != 0)) &&
            parent.children[0] == id;
        if (is_access_scope &&
            std::isupper(static_cast<unsigned char>(name[0]))) {
          return;  // class name, e.g. Integer.toString
        }
        add_occurrence(unresolved_field(name), id);
        return;
      }
      default:
        for (NodeId child : n.children) visit(child);
        return;
    }
  }

  std::vector<VariableBinding> sorted() {
    auto anchor = [&](const VariableBinding& b) {
      if (b.declaration != kNoNode) return ast_[b.declaration].offset;
      std::size_t first = SIZE_MAX;
      for (NodeId o : b.occurrences) first = std::min(first, ast_[o].offset);
      return first;
    };
    for (VariableBinding& b : bindings_) {
      auto begin = b.occurrences.begin();
      if (b.declaration != kNoNode) ++begin;
      std::sort(begin, b.occurrences.end(), [&](NodeId l, NodeId r) {
        return ast_[l].offset < ast_[r].offset;
      });
    }
    std::vector<std::size_t> order(bindings_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) {
                       return anchor(bindings_[l]) < anchor(bindings_[r]);
                     });
    std::vector<VariableBinding> out;
    out.reserve(order.size());
    for (std::size_t i : order) out.push_back(std::move(bindings_[i]));
    return out;
  }

  const SourceUnit& unit_;
  const Ast& ast_;
  std::vector<VariableBinding> bindings_;
  std::vector<Frame> frames_;
  std::unordered_map<std::string, std::size_t> fields_;
  std::unordered_map<std::string, std::size_t> unresolved_fields_;
  std::string class_name_;
  Span class_span_;
};

}  // namespace

std::vector<VariableBinding> resolve_bindings(const SourceUnit& unit) {
  return Resolver(unit).run();
}

}  // namespace codevec::java
