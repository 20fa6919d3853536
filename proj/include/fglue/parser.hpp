/* Copyright 2026 The fglue Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fglue/error.hpp"
#include "fglue/signature.hpp"
#include "fglue/term.hpp"
#include "fglue/type.hpp"

namespace fglue {

/// What unbound identifiers mean while parsing.
///
/// An identifier bound by an enclosing Pi or Lam is a type variable. An
/// unbound one is a sort when listed in `sorts`, otherwise a free type
/// variable. Term identifiers bound by `lam` or listed in `variables` are
/// variables; every other term identifier is a constant.
struct ParseScope {
  std::set<std::string> sorts{"e", "t"};
  std::set<std::string> variables;
  /// Resolves `church:NAME` references. Unset means such references are
  /// rejected.
  std::function<std::optional<Term>(const std::string&)> catalog;

  static ParseScope for_signature(const Signature& sig) {
    ParseScope scope;
    scope.sorts = sig.sorts;
    return scope;
  }
};

struct Token {
  enum class Kind { Ident, CatalogRef, Arrow, Punct, End };
  Kind kind;
  std::string text;
  SourcePos pos;

  bool is_punct(char c) const {
    return kind == Kind::Punct && text.size() == 1 && text[0] == c;
  }
  bool is_ident(std::string_view word) const {
    return kind == Kind::Ident && text == word;
  }
};

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline bool is_keyword(std::string_view word) {
  return word == "lam" || word == "Lam" || word == "Pi";
}

/// Splits source text into tokens. `#` starts a comment running to the end
/// of the line.
inline std::vector<Token> tokenize(std::string_view src,
                                   bool catalog_refs = false) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePos pos{line, col};
    if (is_ident_start(c)) {
      size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      if (catalog_refs && word == "church" && j + 1 < src.size() &&
          src[j] == ':' && is_ident_char(src[j + 1])) {
        size_t k = j + 1;
        while (k < src.size() && is_ident_char(src[k])) ++k;
        out.push_back({Token::Kind::CatalogRef,
                       std::string(src.substr(j + 1, k - j - 1)), pos});
        advance(k - i);
        continue;
      }
      out.push_back({Token::Kind::Ident, std::move(word), pos});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Token::Kind::Arrow, "->", pos});
      advance(2);
      continue;
    }
    if (std::string_view("(){}.:,=[]@").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Punct, std::string(1, c), pos});
      advance(1);
      continue;
    }
    throw Error(ErrorKind::Syntax,
                std::string("unexpected character '") + c + "'", pos);
  }
  out.push_back({Token::Kind::End, "", {line, col}});
  return out;
}

/// Recursive-descent parser over a token stream. The signature and lexicon
/// loaders drive it statement by statement.
class Parser {
 public:
  Parser(std::string_view src, ParseScope scope)
      : scope_(std::move(scope)),
        tokens_(tokenize(src, static_cast<bool>(scope_.catalog))) {}

  const Token& peek(size_t ahead = 0) const {
    size_t k = std::min(index_ + ahead, tokens_.size() - 1);
    return tokens_[k];
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  Token next() {
    Token t = peek();
    if (index_ < tokens_.size() - 1) ++index_;
    return t;
  }

  void expect_punct(char c) {
    if (!peek().is_punct(c)) fail(std::string("expected '") + c + "'");
    next();
  }

  std::string expect_ident(const char* what = "identifier") {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident || is_keyword(t.text)) {
      fail(std::string("expected ") + what);
    }
    return next().text;
  }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    std::string found = t.kind == Token::Kind::End ? "end of input"
                                                   : "'" + t.text + "'";
    throw Error(ErrorKind::Syntax, message + ", found " + found, t.pos);
  }

  ParseScope& scope() { return scope_; }

  Type parse_type() {
    if (peek().is_ident("Pi")) {
      next();
      std::string var = expect_binder();
      expect_punct('.');
      type_binders_.push_back(var);
      Type body = parse_type();
      type_binders_.pop_back();
      return Type::pi(var, body);
    }
    Type left = parse_type_atom();
    if (peek().kind == Token::Kind::Arrow) {
      next();
      return Type::arrow(left, parse_type());
    }
    return left;
  }

  Term parse_term() {
    if (starts_binder()) return parse_binder();
    SourcePos pos = peek().pos;
    Term acc = parse_term_atom();
    for (;;) {
      if (peek().is_punct('{')) {
        next();
        Type arg = parse_type();
        expect_punct('}');
        acc = Term::ty_app(acc, arg, pos);
      } else if (starts_binder()) {
        return Term::app(acc, parse_binder(), pos);
      } else if (starts_atom()) {
        acc = Term::app(acc, parse_term_atom(), pos);
      } else {
        return acc;
      }
    }
  }

 private:
  std::string expect_binder() {
    SourcePos pos = peek().pos;
    std::string name = expect_ident("binder name");
    if (scope_.sorts.count(name)) {
      throw Error(ErrorKind::Syntax,
                  "type variable '" + name + "' clashes with a sort", pos);
    }
    return name;
  }

  Type parse_type_atom() {
    if (peek().is_punct('(')) {
      next();
      Type inner = parse_type();
      expect_punct(')');
      return inner;
    }
    std::string name = expect_ident("type");
    for (auto it = type_binders_.rbegin(); it != type_binders_.rend(); ++it) {
      if (*it == name) return Type::var(name);
    }
    if (scope_.sorts.count(name)) return Type::sort(name);
    return Type::var(name);
  }

  bool starts_binder() const {
    return peek().is_ident("lam") || peek().is_ident("Lam");
  }

  bool starts_atom() const {
    const Token& t = peek();
    if (t.kind == Token::Kind::CatalogRef) return true;
    if (t.kind == Token::Kind::Ident) return !is_keyword(t.text);
    return t.is_punct('(');
  }

  Term parse_binder() {
    SourcePos pos = peek().pos;
    if (next().text == "lam") {
      std::string var = expect_ident("variable name");
      expect_punct(':');
      Type annot = parse_type();
      expect_punct('.');
      term_binders_.push_back(var);
      Term body = parse_term();
      term_binders_.pop_back();
      return Term::lam(var, annot, body, pos);
    }
    std::string var = expect_binder();
    expect_punct('.');
    type_binders_.push_back(var);
    Term body = parse_term();
    type_binders_.pop_back();
    return Term::ty_lam(var, body, pos);
  }

  Term parse_term_atom() {
    const Token& t = peek();
    if (t.is_punct('(')) {
      next();
      Term inner = parse_term();
      expect_punct(')');
      return inner;
    }
    if (t.kind == Token::Kind::CatalogRef) {
      Token ref = next();
      std::optional<Term> term = scope_.catalog(ref.text);
      if (!term) {
        throw Error(ErrorKind::Syntax, "unknown catalog entry 'church:" +
                                           ref.text + "'", ref.pos);
      }
      return *term;
    }
    SourcePos pos = t.pos;
    std::string name = expect_ident("term");
    for (auto it = term_binders_.rbegin(); it != term_binders_.rend(); ++it) {
      if (*it == name) return Term::var(name, pos);
    }
    if (scope_.variables.count(name)) return Term::var(name, pos);
    return Term::constant(name, pos);
  }

  ParseScope scope_;
  std::vector<Token> tokens_;
  size_t index_ = 0;
  std::vector<std::string> type_binders_;
  std::vector<std::string> term_binders_;
};

inline Type parse_type(std::string_view src, ParseScope scope = {}) {
  Parser p(src, std::move(scope));
  Type t = p.parse_type();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return t;
}

inline Term parse_term(std::string_view src, ParseScope scope = {}) {
  Parser p(src, std::move(scope));
  Term t = p.parse_term();
  if (!p.at_end()) p.fail("unexpected trailing input");
  return t;
}

}  // namespace fglue
