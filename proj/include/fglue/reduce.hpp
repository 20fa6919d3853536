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
#include <functional>
#include <optional>
#include <string>

#include "fglue/error.hpp"
#include "fglue/term.hpp"
#include "fglue/typecheck.hpp"

namespace fglue {

enum class Rule { BetaTerm, BetaType };

inline const char* rule_name(Rule rule) {
  return rule == Rule::BetaTerm ? "beta-term" : "beta-type";
}

struct Reduction {
  Term term;
  Rule rule;
};

inline bool is_term_redex(const Term& t) {
  return t.is(Term::Kind::App) && t.fun().is(Term::Kind::Lam);
}

inline bool is_type_redex(const Term& t) {
  return t.is(Term::Kind::TyApp) && t.fun().is(Term::Kind::TyLam);
}

/// Contracts a redex at the root. Precondition: is_term_redex or
/// is_type_redex holds.
inline Reduction contract(const Term& redex) {
  if (is_term_redex(redex)) {
    Term lam = redex.fun();
    return {subst_term(lam.body(), lam.name(), redex.arg()), Rule::BetaTerm};
  }
  Term tylam = redex.fun();
  return {subst_type_in_term(tylam.body(), tylam.name(), redex.type()),
          Rule::BetaType};
}

inline bool is_normal(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return true;
    case Term::Kind::Lam:
    case Term::Kind::TyLam:
      return is_normal(t.body());
    case Term::Kind::App:
      return !is_term_redex(t) && is_normal(t.fun()) && is_normal(t.arg());
    case Term::Kind::TyApp:
      return !is_type_redex(t) && is_normal(t.fun());
  }
  return true;
}

/// One leftmost-outermost reduction step, or nullopt when `t` is normal.
inline std::optional<Reduction> step(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return std::nullopt;
    case Term::Kind::Lam:
      if (auto r = step(t.body())) {
        return Reduction{Term::lam(t.name(), t.type(), r->term, t.pos()),
                         r->rule};
      }
      return std::nullopt;
    case Term::Kind::TyLam:
      if (auto r = step(t.body())) {
        return Reduction{Term::ty_lam(t.name(), r->term, t.pos()), r->rule};
      }
      return std::nullopt;
    case Term::Kind::App:
      if (is_term_redex(t)) return contract(t);
      if (auto r = step(t.fun())) {
        return Reduction{Term::app(r->term, t.arg(), t.pos()), r->rule};
      }
      if (auto r = step(t.arg())) {
        return Reduction{Term::app(t.fun(), r->term, t.pos()), r->rule};
      }
      return std::nullopt;
    case Term::Kind::TyApp:
      if (is_type_redex(t)) return contract(t);
      if (auto r = step(t.fun())) {
        return Reduction{Term::ty_app(r->term, t.type(), t.pos()), r->rule};
      }
      return std::nullopt;
  }
  return std::nullopt;
}

struct NormalForm {
  Term term;
  std::uint64_t steps = 0;
};

/// Called after every step with the 1-based step number.
using StepObserver = std::function<void(std::uint64_t, const Reduction&)>;

/// Reduces to normal form with leftmost-outermost steps. Throws
/// FuelExhausted when `ctx.fuel` steps do not suffice.
inline NormalForm normalize(const Context& ctx, const Term& term,
                            const StepObserver& observer = {}) {
  NormalForm out{term, 0};
  while (auto r = step(out.term)) {
    if (out.steps >= ctx.fuel) {
      throw Error(ErrorKind::FuelExhausted,
                  "no normal form within " + std::to_string(ctx.fuel) +
                      " steps");
    }
    ++out.steps;
    if (observer) observer(out.steps, *r);
    out.term = std::move(r->term);
  }
  return out;
}

}  // namespace fglue
