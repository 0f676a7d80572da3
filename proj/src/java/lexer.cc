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

#include "codevec/java/lexer.h"

#include <algorithm>
#include <array>
#include <cctype>

namespace codevec::java {

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line),
      message_(message) {}

namespace {

constexpr std::array<std::string_view, 50> kKeywords = {
    "abstract",   "assert",       "boolean",   "break",      "byte",
    "case",       "catch",        "char",      "class",      "const",
    "continue",   "default",      "do",        "double",     "else",
    "enum",       "extends",      "final",     "finally",    "float",
    "for",        "goto",         "if",        "implements", "import",
    "instanceof", "int",          "interface", "long",       "native",
    "new",        "package",      "private",   "protected",  "public",
    "return",     "short",        "static",    "strictfp",   "super",
    "switch",     "synchronized", "this",      "throw",      "throws",
    "transient",  "try",          "void",      "volatile",   "while",
};

// Longest first so that maximal munch works by linear scan.
constexpr std::array<std::string_view, 52> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||",
    "==",   "!=",  "<=",  ">=",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=",
    "^=",   "<<",  ">>",  "(",   ")",   "{",  "}",  "[",  "]",  ";",  ",",
    ".",    "@",   "=",   ">",   "<",   "!",  "~",  "?",  ":",  "+",  "-",
    "*",    "/",   "&",   "|",   "^",   "%",  "#",  "\\",
};

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
  return is_ident_start(c) || std::isdigit(c);
}

}  // namespace

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) !=
         kKeywords.end();
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  const std::size_t n = src.size();

  auto peek = [&](std::size_t k) -> unsigned char {
    return i + k < n ? static_cast<unsigned char>(src[i + k]) : '\0';
  };

  while (i < n) {
    const unsigned char c = peek(0);
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == '/' && peek(1) == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && peek(1) == '*') {
      const int start_line = line;
      i += 2;
      while (i < n && !(src[i] == '*' && peek(1) == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      if (i >= n) throw ParseError(start_line, "unterminated comment");
      i += 2;
      continue;
    }

    const std::size_t start = i;
    const int tok_line = line;
    if (is_ident_start(c)) {
      while (i < n && is_ident_part(static_cast<unsigned char>(src[i]))) ++i;
      const std::string_view word = src.substr(start, i - start);
      out.push_back({is_java_keyword(word) ? TokenType::kKeyword
                                           : TokenType::kIdentifier,
                     word, tok_line, start});
      continue;
    }
    if (std::isdigit(c) || (c == '.' && std::isdigit(peek(1)))) {
      bool is_float = false;
      if (c == '0' && (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'b' ||
                       peek(1) == 'B')) {
        i += 2;
        while (i < n && (std::isxdigit(static_cast<unsigned char>(src[i])) ||
                         src[i] == '_')) {
          ++i;
        }
      } else {
        while (i < n && (std::isdigit(static_cast<unsigned char>(src[i])) ||
                         src[i] == '_')) {
          ++i;
        }
        if (i < n && src[i] == '.' &&
            std::isdigit(static_cast<unsigned char>(peek(1)))) {
          is_float = true;
          ++i;
          while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        } else if (i < n && src[i] == '.' && !is_ident_start(peek(1))) {
          // "1." is a valid double literal.
          is_float = true;
          ++i;
        }
        if (i < n && (src[i] == 'e' || src[i] == 'E')) {
          is_float = true;
          ++i;
          if (i < n && (src[i] == '+' || src[i] == '-')) ++i;
          while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        }
      }
      TokenType type = is_float ? TokenType::kFloatLiteral
                                : TokenType::kIntegerLiteral;
      if (i < n) {
        const char s = src[i];
        if (s == 'L' || s == 'l') {
          type = TokenType::kLongLiteral;
          ++i;
        } else if (s == 'f' || s == 'F' || s == 'd' || s == 'D') {
          type = TokenType::kFloatLiteral;
          ++i;
        }
      }
      out.push_back({type, src.substr(start, i - start), tok_line, start});
      continue;
    }
    if (c == '"' || c == '\'') {
      const char quote = static_cast<char>(c);
      ++i;
      while (i < n && src[i] != quote) {
        if (src[i] == '\n') throw ParseError(tok_line, "unterminated literal");
        if (src[i] == '\\') ++i;
        ++i;
      }
      if (i >= n) throw ParseError(tok_line, "unterminated literal");
      ++i;
      out.push_back({quote == '"' ? TokenType::kStringLiteral
                                  : TokenType::kCharLiteral,
                     src.substr(start, i - start), tok_line, start});
      continue;
    }
    bool matched = false;
    for (std::string_view op : kOperators) {
      if (src.substr(i, op.size()) == op) {
        out.push_back({TokenType::kOperator, src.substr(i, op.size()),
                       tok_line, start});
        i += op.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw ParseError(line, std::string("unexpected character '") +
                                 static_cast<char>(c) + "'");
    }
  }
  out.push_back({TokenType::kEnd, std::string_view{}, line, n});
  return out;
}

}  // namespace codevec::java
