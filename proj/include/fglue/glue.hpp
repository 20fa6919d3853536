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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fglue/error.hpp"
#include "fglue/formula.hpp"
#include "fglue/parser.hpp"
#include "fglue/readback.hpp"
#include "fglue/reduce.hpp"
#include "fglue/signature.hpp"
#include "fglue/term.hpp"
#include "fglue/typecheck.hpp"

namespace fglue {

namespace detail {

inline Type sort_t() { return Type::sort("t"); }

inline Type pred_of(const Type& a) { return Type::arrow(a, sort_t()); }

/// (a→t)→t
inline Type raised(const Type& a) { return Type::arrow(pred_of(a), sort_t()); }

inline Type final_codomain(Type type) {
  while (type.is_arrow()) type = type.codomain();
  return type;
}

inline bool is_t(const Type& type) {
  return type.is_sort() && type.name() == "t";
}

inline void check_flag_shape(const std::string& name, const Type& type,
                             ConstFlag flag) {
  auto bad = [&](const std::string& why) {
    throw Error(ErrorKind::MalformedFlag, "constant '" + name + "' flagged " +
                                              flag_name(flag) + ": " + why);
  };
  Type a = Type::var("a");
  switch (flag) {
    case ConstFlag::Quantifier: {
      auto q = quantifier_named(name);
      if (!q) bad("quantifiers are named forall, exists or most");
      Type expected =
          *q == Quantifier::Most
              ? Type::pi("a", Type::arrow(pred_of(a), raised(a)))
              : Type::pi("a", raised(a));
      if (!alpha_eq(type, expected)) bad("expected type " + to_string(expected));
      return;
    }
    case ConstFlag::Choice: {
      if (!choice_named(name)) bad("choice operators are named tau or epsilon");
      bool ok = type.is_pi() && type.body().is_arrow() &&
                alpha_eq(type.body().domain(), pred_of(Type::var(type.name()))) &&
                type.body().codomain().is_sort() &&
                !is_t(type.body().codomain());
      if (!ok) bad("expected type Pi a. (a -> t) -> s for an individual sort s");
      return;
    }
    case ConstFlag::Connective: {
      auto c = connective_named(name);
      if (!c) bad("connectives are named and, or, imp or not");
      Type expected = *c == Connective::Not
                          ? Type::arrow(sort_t(), sort_t())
                          : Type::arrow(sort_t(), Type::arrow(sort_t(), sort_t()));
      if (!alpha_eq(type, expected)) bad("expected type " + to_string(expected));
      return;
    }
    case ConstFlag::Predicate:
      if (contains_pi(type) || !is_t(final_codomain(type))) {
        bad("predicates have Pi-free types ending in t");
      }
      return;
    case ConstFlag::Function:
      if (contains_pi(type) || is_t(final_codomain(type))) {
        bad("functions have Pi-free types ending in an individual sort");
      }
      return;
  }
}

}  // namespace detail

/// Reads a signature file:
///
///     sort e.
///     const forall : Pi a. (a -> t) -> t [quantifier].
///
/// Sorts must be declared before use; `t` and at least one individual sort
/// are required.
inline Signature load_signature(std::string_view src) {
  Signature sig;
  sig.sorts.clear();
  ParseScope scope;
  scope.sorts.clear();
  Parser p(src, scope);
  while (!p.at_end()) {
    SourcePos pos = p.peek().pos;
    if (p.peek().is_ident("sort")) {
      p.next();
      std::string name = p.expect_ident("sort name");
      p.expect_punct('.');
      try {
        sig.declare_sort(name);
      } catch (const Error& e) {
        throw Error(e.kind(), e.detail(), pos);
      }
      p.scope().sorts.insert(name);
    } else if (p.peek().is_ident("const")) {
      p.next();
      std::string name = p.expect_ident("constant name");
      p.expect_punct(':');
      Type type = p.parse_type();
      std::optional<ConstFlag> flag;
      if (p.peek().is_punct('[')) {
        p.next();
        SourcePos flag_pos = p.peek().pos;
        std::string text = p.expect_ident("flag");
        flag = parse_flag(text);
        if (!flag) {
          throw Error(ErrorKind::MalformedFlag, "unknown flag '" + text + "'",
                      flag_pos);
        }
        p.expect_punct(']');
      }
      p.expect_punct('.');
      NameSet free = free_type_vars(type);
      if (!free.empty()) {
        throw Error(ErrorKind::UndeclaredSort,
                    "sort '" + *free.begin() + "' is not declared", pos);
      }
      try {
        if (flag) detail::check_flag_shape(name, type, *flag);
        sig.declare_constant(name, type, flag);
      } catch (const Error& e) {
        throw Error(e.kind(), e.detail(), pos);
      }
    } else {
      p.fail("expected 'sort' or 'const'");
    }
  }
  if (!sig.has_sort("t")) {
    throw Error(ErrorKind::MissingSortT, "signature does not declare sort t");
  }
  if (sig.sorts.size() < 2) {
    throw Error(ErrorKind::MissingSortT,
                "signature declares no individual sort besides t");
  }
  return sig;
}

struct LexEntry {
  std::string name;
  Term term;
  Type type;
};

/// Typed lexical entries and coercions over a signature.
struct Lexicon {
  Signature signature;
  std::vector<LexEntry> words;
  std::vector<LexEntry> coercions;

  const LexEntry* word(const std::string& name) const {
    for (const auto& e : words) {
      if (e.name == name) return &e;
    }
    return nullptr;
  }
  const LexEntry* coercion(const std::string& name) const {
    for (const auto& e : coercions) {
      if (e.name == name) return &e;
    }
    return nullptr;
  }
};

struct LexiconDiagnostic {
  std::string name;
  bool is_coercion = false;
  std::optional<Type> type;  // set on success
  std::string error;         // set on failure
};

struct LexiconCheck {
  Lexicon lexicon;  // the entries that typechecked
  std::vector<LexiconDiagnostic> items;

  bool ok() const {
    for (const auto& d : items) {
      if (!d.type) return false;
    }
    return true;
  }
};

/// Parses a lexicon file and typechecks each entry independently.
/// Syntax errors abort with an Error; type errors are collected.
inline LexiconCheck check_lexicon(const Signature& sig, std::string_view src) {
  LexiconCheck out;
  out.lexicon.signature = sig;
  Parser p(src, ParseScope::for_signature(sig));
  NameSet seen_words, seen_coercions;
  while (!p.at_end()) {
    SourcePos pos = p.peek().pos;
    bool is_coercion = false;
    if (p.peek().is_ident("coercion")) {
      p.next();
      is_coercion = true;
    }
    std::string name = p.expect_ident(is_coercion ? "coercion name" : "word");
    p.expect_punct('=');
    Term term = p.parse_term();
    p.expect_punct('.');
    NameSet& seen = is_coercion ? seen_coercions : seen_words;
    if (!seen.insert(name).second) {
      throw Error(ErrorKind::DuplicateName, "'" + name + "' defined twice", pos);
    }
    LexiconDiagnostic diag{name, is_coercion, std::nullopt, {}};
    try {
      Type type = typecheck(sig, term);
      if (is_coercion && (!type.is_arrow() || contains_pi(type))) {
        throw Error(ErrorKind::BadCoercion,
                    "coercion must be an arrow between Pi-free types, has type " +
                        to_string(type),
                    pos);
      }
      diag.type = type;
      auto& bucket = is_coercion ? out.lexicon.coercions : out.lexicon.words;
      bucket.push_back({name, term, type});
    } catch (const Error& e) {
      diag.error = e.what();
    }
    out.items.push_back(std::move(diag));
  }
  return out;
}

/// Reads `word = TERM.` and `coercion NAME = TERM.` statements. The first
/// entry that fails to typecheck aborts the load with an error naming it.
inline Lexicon load_lexicon(const Signature& sig, std::string_view src) {
  LexiconCheck check = check_lexicon(sig, src);
  for (const auto& d : check.items) {
    if (!d.type) {
      throw Error(ErrorKind::TypeMismatch,
                  std::string(d.is_coercion ? "coercion '" : "word '") +
                      d.name + "': " + d.error);
    }
  }
  return std::move(check.lexicon);
}

/// Syntax tree of a sentence whose leaves are lexicon words.
struct SentenceTree {
  enum class Kind { Leaf, CoerceLeaf, Node };

  Kind kind = Kind::Leaf;
  std::string word;
  std::vector<Type> instantiations;  // Leaf
  std::string coercion;              // CoerceLeaf
  std::vector<SentenceTree> children;  // Node: {function, argument}

  static SentenceTree leaf(std::string word, std::vector<Type> inst = {}) {
    SentenceTree t;
    t.word = std::move(word);
    t.instantiations = std::move(inst);
    return t;
  }
  static SentenceTree coerce_leaf(std::string word, std::string coercion) {
    SentenceTree t;
    t.kind = Kind::CoerceLeaf;
    t.word = std::move(word);
    t.coercion = std::move(coercion);
    return t;
  }
  static SentenceTree node(SentenceTree fun, SentenceTree arg) {
    SentenceTree t;
    t.kind = Kind::Node;
    t.children.push_back(std::move(fun));
    t.children.push_back(std::move(arg));
    return t;
  }
};

inline std::string to_string(const SentenceTree& tree) {
  switch (tree.kind) {
    case SentenceTree::Kind::Leaf: {
      std::string out = tree.word;
      if (!tree.instantiations.empty()) {
        out += '{';
        for (size_t i = 0; i < tree.instantiations.size(); ++i) {
          if (i) out += ", ";
          out += to_string(tree.instantiations[i]);
        }
        out += '}';
      }
      return out;
    }
    case SentenceTree::Kind::CoerceLeaf:
      return tree.word + "@" + tree.coercion;
    case SentenceTree::Kind::Node:
      return "(" + to_string(tree.children[0]) + " " +
             to_string(tree.children[1]) + ")";
  }
  return {};
}

namespace detail {

inline SentenceTree parse_tree_node(Parser& p) {
  if (p.peek().is_punct('(')) {
    p.next();
    SentenceTree acc = parse_tree_node(p);
    if (p.peek().is_punct(')')) p.fail("a node needs at least two children");
    while (!p.peek().is_punct(')')) {
      acc = SentenceTree::node(std::move(acc), parse_tree_node(p));
    }
    p.next();
    return acc;
  }
  std::string word = p.expect_ident("word");
  if (p.peek().is_punct('@')) {
    p.next();
    return SentenceTree::coerce_leaf(word, p.expect_ident("coercion name"));
  }
  std::vector<Type> inst;
  if (p.peek().is_punct('{')) {
    p.next();
    inst.push_back(p.parse_type());
    while (p.peek().is_punct(',')) {
      p.next();
      inst.push_back(p.parse_type());
    }
    p.expect_punct('}');
  }
  return SentenceTree::leaf(word, std::move(inst));
}

}  // namespace detail

/// Parses `((every{e} cat) sleeps)`; `(a b c)` groups as `((a b) c)`.
inline SentenceTree parse_tree(const Signature& sig, std::string_view src) {
  Parser p(src, ParseScope::for_signature(sig));
  SentenceTree tree = detail::parse_tree_node(p);
  if (!p.at_end()) p.fail("unexpected trailing input after tree");
  return tree;
}

/// Solves Πa1…Πak. A→B against an argument type by first-order matching
/// of A. Fails with NoMatch, or Ambiguous when some ai does not occur in A.
inline std::vector<Type> infer_instantiation(const Type& fun_type,
                                             const Type& arg_type) {
  std::vector<std::string> vars;
  Type body = fun_type;
  while (body.is_pi()) {
    std::string v = body.name();
    Type inner = body.body();
    NameSet avoid(vars.begin(), vars.end());
    if (avoid.count(v)) {
      NameSet f = free_type_vars(inner);
      avoid.insert(f.begin(), f.end());
      std::string renamed = fresh_name(v, avoid);
      inner = subst_type(inner, v, Type::var(renamed));
      v = renamed;
    }
    vars.push_back(v);
    body = inner;
  }
  if (vars.empty()) {
    throw Error(ErrorKind::NoMatch, "type " + to_string(fun_type) +
                                        " has no quantifier to instantiate");
  }
  if (!body.is_arrow()) {
    throw Error(ErrorKind::NoMatch,
                "type " + to_string(fun_type) + " is not a quantified function");
  }
  std::map<std::string, Type> solution;
  NameSet pattern_vars(vars.begin(), vars.end());
  auto no_match = [&]() {
    throw Error(ErrorKind::NoMatch, "cannot match " + to_string(body.domain()) +
                                        " against " + to_string(arg_type));
  };
  auto match = [&](auto&& self, const Type& pat, const Type& actual) -> void {
    switch (pat.kind()) {
      case Type::Kind::Var:
        if (pattern_vars.count(pat.name())) {
          auto it = solution.find(pat.name());
          if (it == solution.end()) {
            solution.emplace(pat.name(), actual);
          } else if (!alpha_eq(it->second, actual)) {
            no_match();
          }
          return;
        }
        if (!alpha_eq(pat, actual)) no_match();
        return;
      case Type::Kind::Sort:
        if (!alpha_eq(pat, actual)) no_match();
        return;
      case Type::Kind::Arrow:
        if (!actual.is_arrow()) no_match();
        self(self, pat.domain(), actual.domain());
        self(self, pat.codomain(), actual.codomain());
        return;
      case Type::Kind::Pi: {
        NameSet f = free_type_vars(pat);
        for (const auto& v : f) {
          if (pattern_vars.count(v)) no_match();
        }
        if (!alpha_eq(pat, actual)) no_match();
        return;
      }
    }
  };
  match(match, body.domain(), arg_type);
  std::vector<Type> out;
  for (const auto& v : vars) {
    auto it = solution.find(v);
    if (it == solution.end()) {
      throw Error(ErrorKind::Ambiguous, "type variable '" + v +
                                            "' is not determined by the argument");
    }
    out.push_back(it->second);
  }
  return out;
}

/// λQ:(A→t)→t. λk:B→t. Q (λx:A. k (c x)) for a coercion c : A→B.
inline Term lift_raising(const Signature& sig, const Term& coercion) {
  Type ct = typecheck(sig, coercion);
  if (!ct.is_arrow() || contains_pi(ct)) {
    throw Error(ErrorKind::BadCoercion,
                "coercion must be an arrow between Pi-free types, has type " +
                    to_string(ct));
  }
  Type a = ct.domain(), b = ct.codomain();
  NameSet avoid = free_vars(coercion);
  auto pick = [&](const char* base) {
    std::string n = avoid.count(base) ? fresh_name(base, avoid) : base;
    avoid.insert(n);
    return n;
  };
  std::string q = pick("Q"), k = pick("k"), x = pick("x");
  Term inner = Term::lam(
      x, a, Term::app(Term::var(k), Term::app(coercion, Term::var(x))));
  return Term::lam(q, detail::raised(a),
                   Term::lam(k, detail::pred_of(b),
                             Term::app(Term::var(q), inner)));
}

enum class CoercionMode { Argument, Raised };

/// Applies coercion c : A→B to a predicate over B (argument mode, giving
/// λx:A. target (c x)) or to a raised A-individual (raised mode, giving
/// lift_raising(c) target).
inline Term apply_coercion(const Signature& sig, const Term& coercion,
                           const Term& target, CoercionMode mode) {
  Type ct = typecheck(sig, coercion);
  if (!ct.is_arrow() || contains_pi(ct)) {
    throw Error(ErrorKind::BadCoercion,
                "coercion must be an arrow between Pi-free types, has type " +
                    to_string(ct));
  }
  Type a = ct.domain(), b = ct.codomain();
  Type tt = typecheck(sig, target);
  if (mode == CoercionMode::Argument) {
    if (!alpha_eq(tt, detail::pred_of(b))) {
      throw Error(ErrorKind::BadCoercion,
                  "argument mode needs a target of type " +
                      to_string(detail::pred_of(b)) + ", found " + to_string(tt));
    }
    NameSet avoid = free_vars(target);
    NameSet cv = free_vars(coercion);
    avoid.insert(cv.begin(), cv.end());
    std::string x = avoid.count("x") ? fresh_name("x", avoid) : "x";
    return Term::lam(x, a,
                     Term::app(target, Term::app(coercion, Term::var(x))));
  }
  if (!alpha_eq(tt, detail::raised(a))) {
    throw Error(ErrorKind::BadCoercion,
                "raised mode needs a target of type " +
                    to_string(detail::raised(a)) + ", found " + to_string(tt));
  }
  return Term::app(lift_raising(sig, coercion), target);
}

namespace detail {

struct Composed {
  Term term;
  Type type;
};

inline Composed compose_at(const Lexicon& lex, const SentenceTree& tree,
                           const std::string& path) {
  const Signature& sig = lex.signature;
  auto at = [&](const std::string& msg) { return msg + " (at " + path + ")"; };
  switch (tree.kind) {
    case SentenceTree::Kind::Leaf:
    case SentenceTree::Kind::CoerceLeaf: {
      const LexEntry* entry = lex.word(tree.word);
      if (!entry) {
        throw Error(ErrorKind::UnknownWord,
                    at("word '" + tree.word + "' is not in the lexicon"));
      }
      Term term = entry->term;
      Type type = entry->type;
      if (tree.kind == SentenceTree::Kind::CoerceLeaf) {
        const LexEntry* c = lex.coercion(tree.coercion);
        if (!c) {
          throw Error(ErrorKind::UnknownCoercion,
                      at("coercion '" + tree.coercion + "' is not in the lexicon"));
        }
        CoercionMode mode;
        if (alpha_eq(type, raised(c->type.domain()))) {
          mode = CoercionMode::Raised;
        } else if (alpha_eq(type, pred_of(c->type.codomain()))) {
          mode = CoercionMode::Argument;
        } else {
          throw Error(ErrorKind::BadCoercion,
                      at("coercion '" + tree.coercion + "' : " +
                         to_string(c->type) + " does not apply to '" +
                         tree.word + "' : " + to_string(type)));
        }
        term = apply_coercion(sig, c->term, term, mode);
        return {term, typecheck(sig, term)};
      }
      for (const auto& inst : tree.instantiations) {
        check_sorts(sig, inst);
        if (!type.is_pi()) {
          throw Error(ErrorKind::NotAPiType,
                      at("'" + tree.word + "' has type " + to_string(type) +
                         " and takes no type argument"));
        }
        term = Term::ty_app(term, inst);
        type = subst_type(type.body(), type.name(), inst);
      }
      return {term, type};
    }
    case SentenceTree::Kind::Node: {
      Composed fun = compose_at(lex, tree.children[0], path + ".fun");
      Composed arg = compose_at(lex, tree.children[1], path + ".arg");
      if (fun.type.is_pi()) {
        std::vector<Type> inst;
        try {
          inst = infer_instantiation(fun.type, arg.type);
        } catch (const Error& e) {
          throw Error(ErrorKind::MissingInstantiation,
                      at("'" + to_string(tree.children[0]) +
                         "' needs explicit type arguments: " + e.detail()));
        }
        for (const auto& t : inst) {
          fun.term = Term::ty_app(fun.term, t);
          fun.type = subst_type(fun.type.body(), fun.type.name(), t);
        }
      }
      if (!fun.type.is_arrow()) {
        throw Error(ErrorKind::NotAFunction,
                    at("'" + to_string(tree.children[0]) + "' has type " +
                       to_string(fun.type)));
      }
      if (!alpha_eq(fun.type.domain(), arg.type)) {
        throw Error(ErrorKind::TypeMismatch,
                    at("expected " + to_string(fun.type.domain()) +
                       ", found " + to_string(arg.type) + " for '" +
                       to_string(tree.children[1]) + "'"));
      }
      return {Term::app(fun.term, arg.term), fun.type.codomain()};
    }
  }
  throw Error(ErrorKind::IllFormedHead, "unknown tree node");
}

}  // namespace detail

/// Builds the sentence term bottom-up and typechecks the result.
inline Term compose(const Lexicon& lex, const SentenceTree& tree) {
  detail::Composed c = detail::compose_at(lex, tree, "root");
  Type checked = typecheck(lex.signature, c.term);
  if (!alpha_eq(checked, c.type)) {
    throw Error(ErrorKind::TypeMismatch,
                "composed term has type " + to_string(checked) +
                    ", expected " + to_string(c.type));
  }
  return c.term;
}

/// Every road descends: the subject quantifies over paths while `descends`
/// predicates individuals of sort e, so each path is coerced into the traveller
/// following it.
inline constexpr std::string_view kVirtualTravellerTree =
    "((every{path} road) descends@traveller)";

/// Composes, normalizes and reads back the virtual-traveller sentence.
/// The lexicon must provide `every`, `road`, `descends` and the coercion
/// `traveller`.
inline Formula virtual_traveller_demo(const Lexicon& lex,
                                      std::uint64_t fuel = kDefaultFuel) {
  SentenceTree tree = parse_tree(lex.signature, kVirtualTravellerTree);
  Term term = compose(lex, tree);
  NormalForm nf = normalize(Context(lex.signature, fuel), term);
  return readback_formula(lex.signature, nf.term);
}

}  // namespace fglue
