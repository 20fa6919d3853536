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

#include <cassert>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fglue/error.hpp"
#include "fglue/type.hpp"

namespace fglue {

/// Church-style System F term. Every lambda carries its domain type.
class Term {
 public:
  enum class Kind { Var, Const, Lam, App, TyLam, TyApp };

  static Term var(std::string name, SourcePos pos = {}) {
    return make(Kind::Var, std::move(name), {}, {}, {}, pos);
  }
  static Term constant(std::string name, SourcePos pos = {}) {
    return make(Kind::Const, std::move(name), {}, {}, {}, pos);
  }
  static Term lam(std::string var, Type annot, Term body, SourcePos pos = {}) {
    return make(Kind::Lam, std::move(var), std::move(annot),
                std::move(body.node_), {}, pos);
  }
  static Term app(Term fun, Term arg, SourcePos pos = {}) {
    return make(Kind::App, {}, {}, std::move(fun.node_), std::move(arg.node_),
                pos);
  }
  static Term ty_lam(std::string var, Term body, SourcePos pos = {}) {
    return make(Kind::TyLam, std::move(var), {}, std::move(body.node_), {},
                pos);
  }
  static Term ty_app(Term fun, Type arg, SourcePos pos = {}) {
    return make(Kind::TyApp, {}, std::move(arg), std::move(fun.node_), {},
                pos);
  }

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return kind() == k; }

  /// Variable or constant name, or the binder of Lam / TyLam.
  const std::string& name() const { return node_->name; }
  /// Lam annotation or TyApp argument.
  const Type& type() const {
    assert(is(Kind::Lam) || is(Kind::TyApp));
    return *node_->type;
  }
  /// Lam / TyLam body.
  Term body() const {
    assert(is(Kind::Lam) || is(Kind::TyLam));
    return Term(node_->left);
  }
  /// App / TyApp function part.
  Term fun() const {
    assert(is(Kind::App) || is(Kind::TyApp));
    return Term(node_->left);
  }
  Term arg() const {
    assert(is(Kind::App));
    return Term(node_->right);
  }
  SourcePos pos() const { return node_->pos; }

  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Type> type;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    SourcePos pos;
  };

  static Term make(Kind kind, std::string name, std::optional<Type> type,
                   std::shared_ptr<const Node> left,
                   std::shared_ptr<const Node> right, SourcePos pos) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->name = std::move(name);
    if (type) node->type = std::make_shared<const Type>(std::move(*type));
    node->left = std::move(left);
    node->right = std::move(right);
    node->pos = pos;
    return Term(std::move(node));
  }

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

namespace detail {

inline void collect_free_vars(const Term& term, NameSet& bound, NameSet& out) {
  switch (term.kind()) {
    case Term::Kind::Var:
      if (!bound.count(term.name())) out.insert(term.name());
      return;
    case Term::Kind::Const:
      return;
    case Term::Kind::Lam: {
      bool inserted = bound.insert(term.name()).second;
      collect_free_vars(term.body(), bound, out);
      if (inserted) bound.erase(term.name());
      return;
    }
    case Term::Kind::App:
      collect_free_vars(term.fun(), bound, out);
      collect_free_vars(term.arg(), bound, out);
      return;
    case Term::Kind::TyLam:
      collect_free_vars(term.body(), bound, out);
      return;
    case Term::Kind::TyApp:
      collect_free_vars(term.fun(), bound, out);
      return;
  }
}

inline void collect_term_type_vars(const Term& term, NameSet& bound,
                                   NameSet& out) {
  switch (term.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return;
    case Term::Kind::Lam:
      collect_free_type_vars(term.type(), bound, out);
      collect_term_type_vars(term.body(), bound, out);
      return;
    case Term::Kind::App:
      collect_term_type_vars(term.fun(), bound, out);
      collect_term_type_vars(term.arg(), bound, out);
      return;
    case Term::Kind::TyLam: {
      bool inserted = bound.insert(term.name()).second;
      collect_term_type_vars(term.body(), bound, out);
      if (inserted) bound.erase(term.name());
      return;
    }
    case Term::Kind::TyApp:
      collect_term_type_vars(term.fun(), bound, out);
      collect_free_type_vars(term.type(), bound, out);
      return;
  }
}

inline void collect_constants(const Term& term, NameSet& out) {
  switch (term.kind()) {
    case Term::Kind::Var: return;
    case Term::Kind::Const: out.insert(term.name()); return;
    case Term::Kind::Lam:
    case Term::Kind::TyLam: collect_constants(term.body(), out); return;
    case Term::Kind::App:
      collect_constants(term.fun(), out);
      collect_constants(term.arg(), out);
      return;
    case Term::Kind::TyApp: collect_constants(term.fun(), out); return;
  }
}

}  // namespace detail

inline NameSet free_vars(const Term& term) {
  NameSet bound, out;
  detail::collect_free_vars(term, bound, out);
  return out;
}

/// Type variables occurring free in annotations and type arguments.
inline NameSet free_type_vars(const Term& term) {
  NameSet bound, out;
  detail::collect_term_type_vars(term, bound, out);
  return out;
}

inline NameSet constants_of(const Term& term) {
  NameSet out;
  detail::collect_constants(term, out);
  return out;
}

inline bool is_closed(const Term& term) {
  return free_vars(term).empty() && free_type_vars(term).empty();
}

/// Capture-avoiding `body[var := replacement]` on term variables. Lambda
/// binders are renamed when they would capture a free variable of the
/// replacement, and type binders when they would capture one of its free
/// type variables.
inline Term subst_term(const Term& body, const std::string& var,
                       const Term& replacement);

/// Capture-avoiding `body[tyvar := replacement]` through annotations,
/// type arguments and type abstractions.
inline Term subst_type_in_term(const Term& body, const std::string& tyvar,
                               const Type& replacement);

namespace detail {

inline Term rename_var(const Term& term, const std::string& from,
                       const std::string& to) {
  return subst_term(term, from, Term::var(to));
}

struct TermSubst {
  const std::string& var;
  const Term& replacement;
  NameSet repl_vars;
  NameSet repl_type_vars;

  Term run(const Term& body) const {
    switch (body.kind()) {
      case Term::Kind::Var:
        return body.name() == var ? replacement : body;
      case Term::Kind::Const:
        return body;
      case Term::Kind::Lam: {
        if (body.name() == var) return body;
        NameSet inner = free_vars(body.body());
        if (!inner.count(var)) return body;
        std::string binder = body.name();
        Term inner_body = body.body();
        if (repl_vars.count(binder)) {
          NameSet avoid = repl_vars;
          avoid.insert(inner.begin(), inner.end());
          avoid.insert(var);
          std::string renamed = fresh_name(binder, avoid);
          inner_body = rename_var(inner_body, binder, renamed);
          binder = renamed;
        }
        return Term::lam(binder, body.type(), run(inner_body), body.pos());
      }
      case Term::Kind::App: {
        Term f = run(body.fun());
        Term a = run(body.arg());
        if (f.same_node(body.fun()) && a.same_node(body.arg())) return body;
        return Term::app(f, a, body.pos());
      }
      case Term::Kind::TyLam: {
        if (!free_vars(body.body()).count(var)) return body;
        std::string binder = body.name();
        Term inner_body = body.body();
        if (repl_type_vars.count(binder)) {
          NameSet avoid = repl_type_vars;
          NameSet inner = free_type_vars(inner_body);
          avoid.insert(inner.begin(), inner.end());
          std::string renamed = fresh_name(binder, avoid);
          inner_body = subst_type_in_term(inner_body, binder, Type::var(renamed));
          binder = renamed;
        }
        return Term::ty_lam(binder, run(inner_body), body.pos());
      }
      case Term::Kind::TyApp: {
        Term f = run(body.fun());
        if (f.same_node(body.fun())) return body;
        return Term::ty_app(f, body.type(), body.pos());
      }
    }
    return body;
  }
};

struct TypeInTermSubst {
  const std::string& var;
  const Type& replacement;
  NameSet repl_vars;

  Term run(const Term& body) const {
    switch (body.kind()) {
      case Term::Kind::Var:
      case Term::Kind::Const:
        return body;
      case Term::Kind::Lam: {
        Type annot = subst_type(body.type(), var, replacement);
        Term inner = run(body.body());
        if (annot.same_node(body.type()) && inner.same_node(body.body())) {
          return body;
        }
        return Term::lam(body.name(), annot, inner, body.pos());
      }
      case Term::Kind::App: {
        Term f = run(body.fun());
        Term a = run(body.arg());
        if (f.same_node(body.fun()) && a.same_node(body.arg())) return body;
        return Term::app(f, a, body.pos());
      }
      case Term::Kind::TyLam: {
        if (body.name() == var) return body;
        NameSet inner = free_type_vars(body.body());
        if (!inner.count(var)) return body;
        std::string binder = body.name();
        Term inner_body = body.body();
        if (repl_vars.count(binder)) {
          NameSet avoid = repl_vars;
          avoid.insert(inner.begin(), inner.end());
          avoid.insert(var);
          std::string renamed = fresh_name(binder, avoid);
          inner_body = subst_type_in_term(inner_body, binder, Type::var(renamed));
          binder = renamed;
        }
        return Term::ty_lam(binder, run(inner_body), body.pos());
      }
      case Term::Kind::TyApp: {
        Term f = run(body.fun());
        Type t = subst_type(body.type(), var, replacement);
        if (f.same_node(body.fun()) && t.same_node(body.type())) return body;
        return Term::ty_app(f, t, body.pos());
      }
    }
    return body;
  }
};

}  // namespace detail

inline Term subst_term(const Term& body, const std::string& var,
                       const Term& replacement) {
  detail::TermSubst s{var, replacement, free_vars(replacement),
                      free_type_vars(replacement)};
  return s.run(body);
}

inline Term subst_type_in_term(const Term& body, const std::string& tyvar,
                               const Type& replacement) {
  detail::TypeInTermSubst s{tyvar, replacement, free_type_vars(replacement)};
  return s.run(body);
}

namespace detail {

struct TermAlpha {
  BinderStack left_vars, right_vars;
  BinderStack left_types, right_types;

  bool eq(const Term& a, const Term& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Term::Kind::Var: {
        int i = lookup_binder(left_vars, a.name());
        int j = lookup_binder(right_vars, b.name());
        if (i < 0 && j < 0) return a.name() == b.name();
        return i == j;
      }
      case Term::Kind::Const:
        return a.name() == b.name();
      case Term::Kind::Lam: {
        if (!alpha_eq_types(a.type(), b.type(), left_types, right_types)) {
          return false;
        }
        left_vars.push_back(a.name());
        right_vars.push_back(b.name());
        bool r = eq(a.body(), b.body());
        left_vars.pop_back();
        right_vars.pop_back();
        return r;
      }
      case Term::Kind::App:
        return eq(a.fun(), b.fun()) && eq(a.arg(), b.arg());
      case Term::Kind::TyLam: {
        left_types.push_back(a.name());
        right_types.push_back(b.name());
        bool r = eq(a.body(), b.body());
        left_types.pop_back();
        right_types.pop_back();
        return r;
      }
      case Term::Kind::TyApp:
        return eq(a.fun(), b.fun()) &&
               alpha_eq_types(a.type(), b.type(), left_types, right_types);
    }
    return false;
  }
};

}  // namespace detail

/// Equality up to consistent renaming of bound term and type variables.
inline bool alpha_eq(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  detail::TermAlpha cmp;
  return cmp.eq(a, b);
}

inline bool operator==(const Term& a, const Term& b) { return alpha_eq(a, b); }

namespace detail {

inline void print_term(const Term& term, std::string& out);

inline bool is_binder(const Term& t) {
  return t.is(Term::Kind::Lam) || t.is(Term::Kind::TyLam);
}

inline void print_annotation(const Type& type, std::string& out) {
  if (type.is_pi()) {
    out += '(';
    print_type(type, out);
    out += ')';
  } else {
    print_type(type, out);
  }
}

// Function position of an application or type application.
inline void print_head(const Term& term, std::string& out) {
  if (is_binder(term)) {
    out += '(';
    print_term(term, out);
    out += ')';
  } else {
    print_term(term, out);
  }
}

inline void print_atom(const Term& term, std::string& out) {
  if (term.is(Term::Kind::Var) || term.is(Term::Kind::Const)) {
    out += term.name();
  } else {
    out += '(';
    print_term(term, out);
    out += ')';
  }
}

inline void print_term(const Term& term, std::string& out) {
  switch (term.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      out += term.name();
      return;
    case Term::Kind::Lam:
      out += "lam ";
      out += term.name();
      out += ':';
      print_annotation(term.type(), out);
      out += ". ";
      print_term(term.body(), out);
      return;
    case Term::Kind::TyLam:
      out += "Lam ";
      out += term.name();
      out += ". ";
      print_term(term.body(), out);
      return;
    case Term::Kind::App:
      print_head(term.fun(), out);
      out += ' ';
      print_atom(term.arg(), out);
      return;
    case Term::Kind::TyApp:
      print_head(term.fun(), out);
      out += '{';
      print_type(term.type(), out);
      out += '}';
      return;
  }
}

}  // namespace detail

/// Prints in the concrete grammar accepted by parse_term.
inline std::string to_string(const Term& term) {
  std::string out;
  detail::print_term(term, out);
  return out;
}

}  // namespace fglue
