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

#ifndef CODEVEC_JAVA_PARSER_H_
#define CODEVEC_JAVA_PARSER_H_

#include <string>
#include <vector>

#include "codevec/java/ast.h"
#include "codevec/java/lexer.h"

namespace codevec::java {

// Parses one compilation unit and resolves its variable bindings.
//
// Supported: package/import headers, top-level classes with fields,
// constructors and methods; local declarations; if/else, while, do, for,
// for-each, return, break, continue, throw, try/catch/finally; assignment
// and compound assignment; unary, binary, ternary, cast and instanceof
// expressions; method calls, field and array access; object and array
// creation; all literal forms.
//
// Generics, lambdas, method references, annotations, nested or anonymous
// classes, interfaces, enums, switch and labelled statements are rejected
// with ParseError so batch callers can skip the file.
SourceUnit parse_file(std::string text, std::string path);

// Attributes every NameExpr leaf to its innermost enclosing declaration.
// Bare names with no visible declaration (typically inherited fields) get a
// field binding with the unk type. Method names, class names used as call
// or access scopes, and members accessed through a foreign object stay
// unbound. Bindings are ordered by first appearance in the source.
std::vector<VariableBinding> resolve_bindings(const SourceUnit& unit);

// Prints the tree back to Java source, one token per space. The output lexes
// to the same token sequence as the original text.
std::string print_unit(const SourceUnit& unit);

}  // namespace codevec::java

#endif  // CODEVEC_JAVA_PARSER_H_
