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

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fglue/error.hpp"
#include "fglue/type.hpp"

namespace fglue {

enum class Connective { And, Or, Imp, Not };
enum class Quantifier { Forall, Exists, Most };
enum class ChoiceKind { Epsilon, Tau };

inline std::optional<Connective> connective_named(const std::string& name) {
  if (name == "and") return Connective::And;
  if (name == "or") return Connective::Or;
  if (name == "imp") return Connective::Imp;
  if (name == "not") return Connective::Not;
  return std::nullopt;
}

inline std::optional<Quantifier> quantifier_named(const std::string& name) {
  if (name == "forall") return Quantifier::Forall;
  if (name == "exists") return Quantifier::Exists;
  if (name == "most") return Quantifier::Most;
  return std::nullopt;
}

inline std::optional<ChoiceKind> choice_named(const std::string& name) {
  if (name == "epsilon") return ChoiceKind::Epsilon;
  if (name == "tau") return ChoiceKind::Tau;
  return std::nullopt;
}

inline const char* quantifier_name(Quantifier q) {
  switch (q) {
    case Quantifier::Forall: return "forall";
    case Quantifier::Exists: return "exists";
    case Quantifier::Most: return "most";
  }
  return "?";
}

inline const char* choice_name(ChoiceKind c) {
  return c == ChoiceKind::Tau ? "tau" : "epsilon";
}

/// ASCII operator symbol used by the printer.
inline const char* connective_symbol(Connective c) {
  switch (c) {
    case Connective::And: return "&";
    case Connective::Or: return "|";
    case Connective::Imp: return "->";
    case Connective::Not: return "~";
  }
  return "?";
}

struct LogicTerm;

/// Formula of many-sorted first- or higher-order logic produced by readback.
struct Formula {
  enum class Kind { Atom, Conn, Quant };

  Kind kind = Kind::Atom;

  // Atom: predicate constant, or a bound predicate variable.
  std::string pred;
  bool pred_is_var = false;
  std::vector<LogicTerm> args;

  Connective conn = Connective::And;
  Quantifier quant = Quantifier::Forall;
  std::optional<Type> sort;
  std::string var;

  // Conn: the operands. Quant: {body}, or {restrictor, scope} for most.
  std::vector<Formula> operands;

  const Formula& body() const { return operands.back(); }

  static Formula atom(std::string pred, std::vector<LogicTerm> args,
                      bool is_var = false);
  static Formula connective(Connective c, std::vector<Formula> operands) {
    Formula f;
    f.kind = Kind::Conn;
    f.conn = c;
    f.operands = std::move(operands);
    return f;
  }
  static Formula quantified(Quantifier q, Type sort, std::string var,
                            std::vector<Formula> operands) {
    Formula f;
    f.kind = Kind::Quant;
    f.quant = q;
    f.sort = std::move(sort);
    f.var = std::move(var);
    f.operands = std::move(operands);
    return f;
  }

  bool operator==(const Formula& other) const;
};

/// Argument of an atom: individuals, function applications, Hilbert choice
/// terms, and for higher-order signatures abstractions and embedded
/// formulas.
struct LogicTerm {
  enum class Kind { IndVar, IndConst, FuncApp, Choice, Abstraction, Embedded };

  Kind kind = Kind::IndVar;
  std::string name;
  std::optional<Type> sort;
  ChoiceKind choice = ChoiceKind::Tau;
  // FuncApp arguments, or the single body of an Abstraction.
  std::vector<LogicTerm> args;
  // Choice body or Embedded formula; always one element when used.
  std::vector<Formula> formula;

  static LogicTerm ind_var(std::string name, Type sort) {
    LogicTerm t;
    t.kind = Kind::IndVar;
    t.name = std::move(name);
    t.sort = std::move(sort);
    return t;
  }
  static LogicTerm ind_const(std::string name, Type sort) {
    LogicTerm t;
    t.kind = Kind::IndConst;
    t.name = std::move(name);
    t.sort = std::move(sort);
    return t;
  }
  static LogicTerm func_app(std::string name, std::vector<LogicTerm> args) {
    LogicTerm t;
    t.kind = Kind::FuncApp;
    t.name = std::move(name);
    t.args = std::move(args);
    return t;
  }
  static LogicTerm choice_term(ChoiceKind c, Type sort, std::string var,
                               Formula body) {
    LogicTerm t;
    t.kind = Kind::Choice;
    t.choice = c;
    t.sort = std::move(sort);
    t.name = std::move(var);
    t.formula.push_back(std::move(body));
    return t;
  }
  static LogicTerm abstraction(std::string var, Type sort, LogicTerm body) {
    LogicTerm t;
    t.kind = Kind::Abstraction;
    t.name = std::move(var);
    t.sort = std::move(sort);
    t.args.push_back(std::move(body));
    return t;
  }
  static LogicTerm embedded(Formula f) {
    LogicTerm t;
    t.kind = Kind::Embedded;
    t.formula.push_back(std::move(f));
    return t;
  }

  bool operator==(const LogicTerm& other) const = default;
};

inline Formula Formula::atom(std::string pred, std::vector<LogicTerm> args,
                             bool is_var) {
  Formula f;
  f.kind = Kind::Atom;
  f.pred = std::move(pred);
  f.args = std::move(args);
  f.pred_is_var = is_var;
  return f;
}

inline bool Formula::operator==(const Formula& other) const {
  return kind == other.kind && pred == other.pred &&
         pred_is_var == other.pred_is_var && args == other.args &&
         conn == other.conn && quant == other.quant && sort == other.sort &&
         var == other.var && operands == other.operands;
}

namespace detail {

inline void print_formula(const Formula& f, std::string& out);

inline void print_logic_term(const LogicTerm& t, std::string& out) {
  switch (t.kind) {
    case LogicTerm::Kind::IndVar:
    case LogicTerm::Kind::IndConst:
      out += t.name;
      return;
    case LogicTerm::Kind::FuncApp:
      out += t.name;
      out += '(';
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        print_logic_term(t.args[i], out);
      }
      out += ')';
      return;
    case LogicTerm::Kind::Choice:
      out += choice_name(t.choice);
      out += ' ' + t.name + ':' + to_string(*t.sort) + ". ";
      print_formula(t.formula.front(), out);
      return;
    case LogicTerm::Kind::Abstraction:
      out += "lam " + t.name + ':' + to_string(*t.sort) + ". ";
      print_logic_term(t.args.front(), out);
      return;
    case LogicTerm::Kind::Embedded:
      print_formula(t.formula.front(), out);
      return;
  }
}

// Quantifiers extend to the right, so they are parenthesized as operands.
inline void print_operand(const Formula& f, std::string& out) {
  if (f.kind == Formula::Kind::Quant) {
    out += '(';
    print_formula(f, out);
    out += ')';
  } else {
    print_formula(f, out);
  }
}

inline void print_formula(const Formula& f, std::string& out) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      out += f.pred;
      if (!f.args.empty()) {
        out += '(';
        for (size_t i = 0; i < f.args.size(); ++i) {
          if (i) out += ", ";
          print_logic_term(f.args[i], out);
        }
        out += ')';
      }
      return;
    case Formula::Kind::Conn:
      if (f.conn == Connective::Not) {
        out += '~';
        print_operand(f.operands.front(), out);
        return;
      }
      out += '(';
      print_operand(f.operands[0], out);
      out += ' ';
      out += connective_symbol(f.conn);
      out += ' ';
      print_operand(f.operands[1], out);
      out += ')';
      return;
    case Formula::Kind::Quant:
      out += quantifier_name(f.quant);
      out += ' ' + f.var + ':' + to_string(*f.sort) + ". ";
      if (f.quant == Quantifier::Most) {
        out += '[';
        print_formula(f.operands[0], out);
        out += "] ";
      }
      print_formula(f.body(), out);
      return;
  }
}

}  // namespace detail

/// Deterministic, fully parenthesized ASCII rendering, e.g.
/// `forall x:e. (CAT(x) -> SLEEPS(x))`.
inline std::string print_formula(const Formula& f) {
  std::string out;
  detail::print_formula(f, out);
  return out;
}

inline std::string to_string(const LogicTerm& t) {
  std::string out;
  detail::print_logic_term(t, out);
  return out;
}

/// Order of a Pi-free closed type: individual sorts are 1, `t` is 0, and
/// an arrow A→B has order max(order(A)+1, order(B)).
inline int type_order(const Type& type) {
  switch (type.kind()) {
    case Type::Kind::Sort:
      return type.name() == "t" ? 0 : 1;
    case Type::Kind::Arrow:
      return std::max(type_order(type.domain()) + 1,
                      type_order(type.codomain()));
    case Type::Kind::Var:
    case Type::Kind::Pi:
      break;
  }
  throw Error(ErrorKind::PiNotOrderable,
              "type " + to_string(type) + " is not a closed Pi-free type");
}

inline constexpr int kDefaultOmegaCap = 9;

struct OrderReport {
  /// Set when some witness exceeds the cap.
  bool omega = false;
  int order = 1;
  std::vector<std::pair<Type, int>> witnesses;

  std::string label() const {
    return omega ? std::string("omega") : std::to_string(order);
  }
};

namespace detail {

inline void add_witness(const Type& sort, OrderReport& report) {
  for (const auto& w : report.witnesses) {
    if (alpha_eq(w.first, sort)) return;
  }
  report.witnesses.emplace_back(sort, type_order(sort));
}

inline void collect_witnesses(const Formula& f, OrderReport& report);

inline void collect_witnesses(const LogicTerm& t, OrderReport& report) {
  if (t.kind == LogicTerm::Kind::Choice) add_witness(*t.sort, report);
  for (const auto& a : t.args) collect_witnesses(a, report);
  for (const auto& g : t.formula) collect_witnesses(g, report);
}

inline void collect_witnesses(const Formula& f, OrderReport& report) {
  if (f.kind == Formula::Kind::Quant) add_witness(*f.sort, report);
  for (const auto& a : f.args) collect_witnesses(a, report);
  for (const auto& g : f.operands) collect_witnesses(g, report);
}

}  // namespace detail

/// Maximum order over the sorts bound by quantifiers and choice operators,
/// 1 when there are none. Orders above `omega_cap` are reported as omega.
inline OrderReport classify_order(const Formula& f,
                                  int omega_cap = kDefaultOmegaCap) {
  OrderReport report;
  detail::collect_witnesses(f, report);
  for (const auto& [sort, order] : report.witnesses) {
    report.order = std::max(report.order, order);
  }
  report.omega = report.order > omega_cap;
  return report;
}

}  // namespace fglue
