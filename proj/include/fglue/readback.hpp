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

#include <string>
#include <utility>
#include <vector>

#include "fglue/error.hpp"
#include "fglue/formula.hpp"
#include "fglue/reduce.hpp"
#include "fglue/signature.hpp"
#include "fglue/term.hpp"
#include "fglue/typecheck.hpp"

namespace fglue {

namespace detail {

struct SpineArg {
  bool is_type;
  Term term;         // valid when !is_type
  Type type_arg;     // valid when is_type
};

// Splits `h a1 {T} a2 ...` into its head and arguments, left to right.
inline Term spine(const Term& term, std::vector<SpineArg>& args) {
  Term head = term;
  std::vector<SpineArg> rev;
  for (;;) {
    if (head.is(Term::Kind::App)) {
      rev.push_back({false, head.arg(), Type::sort("?")});
      head = head.fun();
    } else if (head.is(Term::Kind::TyApp)) {
      rev.push_back({true, head, head.type()});
      head = head.fun();
    } else {
      break;
    }
  }
  args.assign(rev.rbegin(), rev.rend());
  return head;
}

class Reader {
 public:
  explicit Reader(const Signature& sig) : ctx_(sig) {}

  Formula formula(const Term& term) {
    std::vector<SpineArg> args;
    Term head = spine(term, args);
    if (head.is(Term::Kind::Var)) {
      return Formula::atom(head.name(), term_args(head, args), true);
    }
    if (!head.is(Term::Kind::Const)) ill_formed(term);
    const ConstantDecl& decl = logical(head);
    switch (*decl.flag) {
      case ConstFlag::Connective: {
        Connective c = *connective_named(head.name());
        size_t arity = c == Connective::Not ? 1 : 2;
        if (args.size() != arity) ill_formed(term);
        std::vector<Formula> ops;
        for (const auto& a : args) {
          if (a.is_type) ill_formed(term);
          ops.push_back(formula(a.term));
        }
        return Formula::connective(c, std::move(ops));
      }
      case ConstFlag::Quantifier: {
        Quantifier q = *quantifier_named(head.name());
        size_t arity = q == Quantifier::Most ? 3 : 2;
        if (args.size() != arity || !args[0].is_type) ill_formed(term);
        const Type& sort = args[0].type_arg;
        std::string var = binder_name(args[1].term);
        std::vector<Formula> ops;
        for (size_t i = 1; i < args.size(); ++i) {
          if (args[i].is_type) ill_formed(term);
          ops.push_back(scoped(var, sort, args[i].term));
        }
        return Formula::quantified(q, sort, var, std::move(ops));
      }
      case ConstFlag::Predicate:
        return Formula::atom(head.name(), term_args(head, args));
      case ConstFlag::Choice:
      case ConstFlag::Function:
        break;
    }
    ill_formed(term);
  }

  LogicTerm logic_term(const Term& term) {
    Type type = type_of(term);
    if (type.is_sort() && type.name() == "t") {
      return LogicTerm::embedded(formula(term));
    }
    if (term.is(Term::Kind::Lam)) {
      locals_.emplace_back(term.name(), term.type());
      LogicTerm body = logic_term(term.body());
      locals_.pop_back();
      return LogicTerm::abstraction(term.name(), term.type(), std::move(body));
    }
    std::vector<SpineArg> args;
    Term head = spine(term, args);
    if (head.is(Term::Kind::Var)) {
      if (args.empty()) return LogicTerm::ind_var(head.name(), type);
      return LogicTerm::func_app(head.name(), term_args(head, args));
    }
    if (!head.is(Term::Kind::Const)) ill_formed(term);
    const ConstantDecl& decl = logical(head);
    if (*decl.flag == ConstFlag::Choice && args.size() == 2 &&
        args[0].is_type && !args[1].is_type) {
      const Type& sort = args[0].type_arg;
      std::string var = binder_name(args[1].term);
      return LogicTerm::choice_term(*choice_named(head.name()), sort, var,
                                    scoped(var, sort, args[1].term));
    }
    if (args.empty()) return LogicTerm::ind_const(head.name(), decl.type);
    return LogicTerm::func_app(head.name(), term_args(head, args));
  }

  Type type_of(const Term& term) {
    TypeChecker checker(ctx_);
    for (const auto& [name, type] : locals_) checker.push_local(name, type);
    return checker.infer(term);
  }

 private:
  [[noreturn]] void ill_formed(const Term& term) const {
    throw Error(ErrorKind::IllFormedHead,
                "normal term '" + to_string(term) +
                    "' is not headed by a usable logical constant",
                term.pos());
  }

  const ConstantDecl& logical(const Term& head) const {
    const ConstantDecl* decl = ctx_.signature.find(head.name());
    if (!decl) {
      throw Error(ErrorKind::UndeclaredConstant,
                  "constant '" + head.name() + "' is not declared", head.pos());
    }
    if (!decl->flag) {
      throw Error(ErrorKind::NonLogicalConstant,
                  "'" + head.name() + "' is not a logical constant",
                  head.pos());
    }
    return *decl;
  }

  std::vector<LogicTerm> term_args(const Term& head,
                                   const std::vector<SpineArg>& args) {
    std::vector<LogicTerm> out;
    for (const auto& a : args) {
      if (a.is_type) ill_formed(head);
      out.push_back(logic_term(a.term));
    }
    return out;
  }

  // Binder for a predicate argument; η-short predicates get a fresh one.
  std::string binder_name(const Term& pred) const {
    if (pred.is(Term::Kind::Lam)) return pred.name();
    NameSet avoid = free_vars(pred);
    for (const auto& l : locals_) avoid.insert(l.first);
    for (const auto& c : constants_of(pred)) avoid.insert(c);
    return avoid.count("x") ? fresh_name("x", avoid) : "x";
  }

  // Reads `pred var` as a formula, with `var : sort` in scope.
  Formula scoped(const std::string& var, const Type& sort, const Term& pred) {
    Term body = pred.is(Term::Kind::Lam)
                    ? subst_term(pred.body(), pred.name(), Term::var(var))
                    : Term::app(pred, Term::var(var));
    locals_.emplace_back(var, sort);
    Formula f = formula(body);
    locals_.pop_back();
    return f;
  }

  Context ctx_;
  std::vector<std::pair<std::string, Type>> locals_;
};

}  // namespace detail

/// Translates a normal term of type t into a Formula. Rejects terms that
/// still contain a redex, terms of another type, and non-logical constants.
inline Formula readback_formula(const Signature& sig, const Term& term) {
  if (!is_normal(term)) {
    throw Error(ErrorKind::NotNormal,
                "term is not in normal form: " + to_string(term));
  }
  detail::Reader reader(sig);
  Type type = reader.type_of(term);
  if (!(type.is_sort() && type.name() == "t")) {
    throw Error(ErrorKind::NotTypeT,
                "expected a term of type t, found " + to_string(type));
  }
  return reader.formula(term);
}

}  // namespace fglue
