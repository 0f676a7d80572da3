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

#ifndef CODEVEC_JAVA_LEXER_H_
#define CODEVEC_JAVA_LEXER_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace codevec::java {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  std::string message_;
};

enum class TokenType {
  kIdentifier,
  kKeyword,
  kIntegerLiteral,
  kLongLiteral,
  kFloatLiteral,
  kStringLiteral,
  kCharLiteral,
  kOperator,  // operators and separators
  kEnd,
};

struct Token {
  TokenType type;
  std::string_view text;
  int line;
  std::size_t offset;
};

bool is_java_keyword(std::string_view word);

// Splits source into tokens. Whitespace and comments are dropped. The
// returned views point into `source`, which must outlive them. The final
// token is always kEnd.
std::vector<Token> tokenize(std::string_view source);

}  // namespace codevec::java

#endif  // CODEVEC_JAVA_LEXER_H_
