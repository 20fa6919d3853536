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

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fglue/error.hpp"
#include "fglue/signature.hpp"
#include "fglue/term.hpp"
#include "fglue/type.hpp"

namespace fglue {

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

/// Typing context: free term variables, the signature being glued, and the
/// reduction budget used by normalize.
struct Context {
  std::map<std::string, Type> term_bindings;
  Signature signature = Signature::minimal();
  std::uint64_t fuel = kDefaultFuel;

  Context() = default;
  explicit Context(Signature sig, std::uint64_t fuel_budget = kDefaultFuel)
      : signature(std::move(sig)), fuel(fuel_budget) {}

  Context& bind(const std::string& name, Type type) {
    if (!term_bindings.emplace(name, std::move(type)).second) {
      throw Error(ErrorKind::DuplicateName,
                  "variable '" + name + "' bound twice in context");
    }
    return *this;
  }
};

/// Raises UndeclaredSort if `type` mentions a sort the signature lacks.
inline void check_sorts(const Signature& sig, const Type& type,
                        SourcePos pos = {}) {
  for (const auto& s : sorts_of(type)) {
    if (!sig.has_sort(s)) {
      throw Error(ErrorKind::UndeclaredSort, "sort '" + s + "' is not declared",
                  pos);
    }
  }
}

namespace detail {

class TypeChecker {
 public:
  explicit TypeChecker(const Context& ctx) : ctx_(ctx) {}

  Type infer(const Term& term) {
    switch (term.kind()) {
      case Term::Kind::Var:
        return lookup(term.name(), term.pos());
      case Term::Kind::Const: {
        const ConstantDecl* decl = ctx_.signature.find(term.name());
        if (!decl) {
          throw Error(ErrorKind::UndeclaredConstant,
                      "constant '" + term.name() + "' is not declared",
                      term.pos());
        }
        return decl->type;
      }
      case Term::Kind::Lam: {
        check_sorts(ctx_.signature, term.type(), term.pos());
        locals_.emplace_back(term.name(), term.type());
        Type body = infer(term.body());
        locals_.pop_back();
        return Type::arrow(term.type(), body);
      }
      case Term::Kind::App: {
        Type fun = infer(term.fun());
        if (!fun.is_arrow()) {
          std::string hint = fun.is_pi() ? " (missing type application?)" : "";
          throw Error(ErrorKind::NotAFunction,
                      "'" + to_string(term.fun()) + "' has type " +
                          to_string(fun) + hint,
                      term.pos());
        }
        Type arg = infer(term.arg());
        if (!alpha_eq(fun.domain(), arg)) {
          throw Error(ErrorKind::TypeMismatch,
                      "expected " + to_string(fun.domain()) + ", found " +
                          to_string(arg) + " for argument '" +
                          to_string(term.arg()) + "'",
                      term.arg().pos().known() ? term.arg().pos() : term.pos());
        }
        return fun.codomain();
      }
      case Term::Kind::TyLam: {
        // The abstracted variable may not occur free in the type of any
        // free term variable of the body.
        for (const auto& v : free_vars(term.body())) {
          Type vt = lookup(v, term.pos());
          if (free_type_vars(vt).count(term.name())) {
            throw Error(ErrorKind::SideConditionViolation,
                        "type variable '" + term.name() +
                            "' is free in the type " + to_string(vt) +
                            " of free variable '" + v + "'",
                        term.pos());
          }
        }
        return Type::pi(term.name(), infer(term.body()));
      }
      case Term::Kind::TyApp: {
        check_sorts(ctx_.signature, term.type(), term.pos());
        Type fun = infer(term.fun());
        if (!fun.is_pi()) {
          throw Error(ErrorKind::NotAPiType,
                      "'" + to_string(term.fun()) + "' has type " +
                          to_string(fun) + ", which is not a Pi type",
                      term.pos());
        }
        return subst_type(fun.body(), fun.name(), term.type());
      }
    }
    throw Error(ErrorKind::IllFormedHead, "unknown term node");
  }

  void push_local(const std::string& name, Type type) {
    locals_.emplace_back(name, std::move(type));
  }

 private:
  Type lookup(const std::string& name, SourcePos pos) const {
    for (auto it = locals_.rbegin(); it != locals_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    auto it = ctx_.term_bindings.find(name);
    if (it != ctx_.term_bindings.end()) return it->second;
    throw Error(ErrorKind::UnboundVariable, "variable '" + name + "' is unbound",
                pos);
  }

  const Context& ctx_;
  std::vector<std::pair<std::string, Type>> locals_;
};

}  // namespace detail

/// Infers the unique type of `term` under `ctx`.
inline Type typecheck(const Context& ctx, const Term& term) {
  for (const auto& [name, type] : ctx.term_bindings) {
    check_sorts(ctx.signature, type);
  }
  detail::TypeChecker checker(ctx);
  return checker.infer(term);
}

/// Convenience for closed terms over a signature.
inline Type typecheck(const Signature& sig, const Term& term) {
  return typecheck(Context(sig), term);
}

}  // namespace fglue
