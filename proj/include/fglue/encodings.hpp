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

#include <optional>
#include <string>
#include <vector>

#include "fglue/term.hpp"
#include "fglue/type.hpp"

// Church encodings of data in System F. Every term built here is closed.
namespace fglue::church {

namespace detail {

inline Type v(const char* name) { return Type::var(name); }
inline Type arr(Type a, Type b) { return Type::arrow(std::move(a), std::move(b)); }
inline Term var(const char* name) { return Term::var(name); }
inline Term ap(Term f, Term a) { return Term::app(std::move(f), std::move(a)); }
inline Term ap(Term f, Term a, Term b) { return ap(ap(std::move(f), std::move(a)), std::move(b)); }
inline Term tap(Term f, Type t) { return Term::ty_app(std::move(f), std::move(t)); }

// A binder name not free in any of `types`.
inline std::string pick(const char* base, std::initializer_list<Type> types) {
  NameSet avoid;
  for (const auto& t : types) {
    NameSet f = free_type_vars(t);
    avoid.insert(f.begin(), f.end());
  }
  if (!avoid.count(base)) return base;
  return fresh_name(base, avoid);
}

}  // namespace detail

/// ΠX.(A→B→X)→X
inline Type product_type(const Type& a, const Type& b) {
  using namespace detail;
  std::string x = pick("X", {a, b});
  return Type::pi(x, arr(arr(a, arr(b, v(x.c_str()))), v(x.c_str())));
}

/// Πq.(Πvar.(body→q))→q with q fresh for body.
inline Type exists_type(const std::string& var, const Type& body) {
  using namespace detail;
  NameSet avoid = free_type_vars(body);
  avoid.insert(var);
  std::string q = avoid.count("q") ? fresh_name("q", avoid) : "q";
  Type qv = Type::var(q);
  return Type::pi(q, arr(Type::pi(var, arr(body, qv)), qv));
}

/// Πp.(p→p)→(p→p)
inline Type nat_type() {
  using namespace detail;
  return Type::pi("p", arr(arr(v("p"), v("p")), arr(v("p"), v("p"))));
}

/// ΠX.X→X→X
inline Type bool_type() {
  using namespace detail;
  return Type::pi("X", arr(v("X"), arr(v("X"), v("X"))));
}

/// ΠX.X→(α→X→X)→X
inline Type list_type(const Type& elem) {
  using namespace detail;
  std::string x = pick("X", {elem});
  Type xv = Type::var(x);
  return Type::pi(x, arr(xv, arr(arr(elem, arr(xv, xv)), xv)));
}

/// Λp.λf:p→p.λx:p. f(…(f x))
inline Term numeral(unsigned n) {
  using namespace detail;
  Term body = var("x");
  for (unsigned i = 0; i < n; ++i) body = ap(var("f"), body);
  return Term::ty_lam(
      "p", Term::lam("f", arr(v("p"), v("p")), Term::lam("x", v("p"), body)));
}

struct NatOps {
  Term succ, add, mult;
};

/// Iterator-style arithmetic on numerals.
inline NatOps nat_ops() {
  using namespace detail;
  Type nat = nat_type();
  Type pp = arr(v("p"), v("p"));
  // succ = λn. Λp. λf. λx. f (n{p} f x)
  Term succ = Term::lam(
      "n", nat,
      Term::ty_lam("p", Term::lam("f", pp, Term::lam("x", v("p"),
          ap(var("f"), ap(tap(var("n"), v("p")), var("f"), var("x")))))));
  // add = λm. λn. Λp. λf. λx. m{p} f (n{p} f x)
  Term add = Term::lam(
      "m", nat, Term::lam("n", nat,
      Term::ty_lam("p", Term::lam("f", pp, Term::lam("x", v("p"),
          ap(tap(var("m"), v("p")), var("f"),
             ap(tap(var("n"), v("p")), var("f"), var("x"))))))));
  // mult = λm. λn. Λp. λf. m{p} (n{p} f)
  Term mult = Term::lam(
      "m", nat, Term::lam("n", nat,
      Term::ty_lam("p", Term::lam("f", pp,
          ap(tap(var("m"), v("p")), ap(tap(var("n"), v("p")), var("f")))))));
  return {succ, add, mult};
}

struct BoolOps {
  Term true_, false_, ite;
};

inline BoolOps bool_ops() {
  using namespace detail;
  Term tru = Term::ty_lam(
      "X", Term::lam("x", v("X"), Term::lam("y", v("X"), var("x"))));
  Term fls = Term::ty_lam(
      "X", Term::lam("x", v("X"), Term::lam("y", v("X"), var("y"))));
  // ite = ΛX. λb:Bool. λx:X. λy:X. b{X} x y
  Term ite = Term::ty_lam(
      "X", Term::lam("b", bool_type(), Term::lam("x", v("X"), Term::lam("y", v("X"),
          ap(tap(var("b"), v("X")), var("x"), var("y"))))));
  return {tru, fls, ite};
}

struct ListOps {
  Term nil, cons, fold;
};

/// Constructors and the fold for lists of the closed type `elem`. fold has
/// type ΠX. List(elem)→X→(elem→X→X)→X.
inline ListOps list_ops(const Type& elem) {
  using namespace detail;
  Type list = list_type(elem);
  std::string x = pick("X", {elem});
  Type xv = Type::var(x);
  Type step_ty = arr(elem, arr(xv, xv));
  Term nil = Term::ty_lam(
      x, Term::lam("n", xv, Term::lam("c", step_ty, var("n"))));
  Term cons = Term::lam(
      "h", elem, Term::lam("tl", list,
      Term::ty_lam(x, Term::lam("n", xv, Term::lam("c", step_ty,
          ap(var("c"), var("h"), ap(tap(var("tl"), xv), var("n"), var("c"))))))));
  Term fold = Term::ty_lam(
      x, Term::lam("l", list, Term::lam("n", xv, Term::lam("c", step_ty,
          ap(tap(var("l"), xv), var("n"), var("c"))))));
  return {nil, cons, fold};
}

struct ProductOps {
  Term pair, fst, snd;
};

inline ProductOps product_ops(const Type& a, const Type& b) {
  using namespace detail;
  Type prod = product_type(a, b);
  std::string x = pick("X", {a, b});
  Type xv = Type::var(x);
  Term pair = Term::lam(
      "a", a, Term::lam("b", b,
      Term::ty_lam(x, Term::lam("k", arr(a, arr(b, xv)),
          ap(var("k"), var("a"), var("b"))))));
  Term fst = Term::lam(
      "pr", prod, ap(tap(var("pr"), a),
                     Term::lam("a", a, Term::lam("b", b, var("a")))));
  Term snd = Term::lam(
      "pr", prod, ap(tap(var("pr"), b),
                     Term::lam("a", a, Term::lam("b", b, var("b")))));
  return {pair, fst, snd};
}

struct ExistsOps {
  /// body[var:=witness] → ∃var.body
  Term pack;
  /// ∃var.body → (Πvar.(body→result)) → result
  Term unpack;
};

inline ExistsOps exists_ops(const std::string& tyvar, const Type& body,
                            const Type& witness, const Type& result) {
  using namespace detail;
  Type ex = exists_type(tyvar, body);
  // ex is Πq. K → q; reuse its binder and continuation type.
  std::string q = ex.name();
  Type k_ty = ex.body().domain();
  Term pack = Term::lam(
      "w", subst_type(body, tyvar, witness),
      Term::ty_lam(q, Term::lam("k", k_ty,
          ap(tap(var("k"), witness), var("w")))));
  Term unpack = Term::lam(
      "ex", ex, Term::lam("k", subst_type(k_ty, q, result),
          ap(tap(var("ex"), result), var("k"))));
  return {pack, unpack};
}

/// Further arithmetic used by the sorting demo: predecessor through pairs,
/// truncated subtraction, zero test and ≤.
struct NatExtras {
  Term pred, sub, is_zero, leq;
};

inline NatExtras nat_extras() {
  using namespace detail;
  Type nat = nat_type();
  Type nn = product_type(nat, nat);
  ProductOps pr = product_ops(nat, nat);
  NatOps ops = nat_ops();
  BoolOps bools = bool_ops();
  // pred n = fst (n{N×N} (λq. pair (snd q) (succ (snd q))) (pair 0 0))
  Term shift = Term::lam(
      "q", nn, ap(pr.pair, ap(pr.snd, var("q")),
                  ap(ops.succ, ap(pr.snd, var("q")))));
  Term pred = Term::lam(
      "n", nat, ap(pr.fst, ap(tap(var("n"), nn), shift,
                              ap(pr.pair, numeral(0), numeral(0)))));
  Term sub = Term::lam(
      "m", nat, Term::lam("n", nat, ap(tap(var("n"), nat), pred, var("m"))));
  Term is_zero = Term::lam(
      "n", nat, ap(tap(var("n"), bool_type()),
                   Term::lam("b", bool_type(), bools.false_), bools.true_));
  Term leq = Term::lam(
      "m", nat, Term::lam("n", nat,
          ap(is_zero, ap(sub, var("m"), var("n")))));
  return {pred, sub, is_zero, leq};
}

/// Catalog entry names accepted by lookup, besides decimal numerals.
inline std::vector<std::string> catalog_names() {
  return {"succ", "add", "mult", "pred", "sub", "is_zero", "leq",
          "true", "false", "ite", "nil", "cons", "fold", "pair", "fst", "snd"};
}

/// Resolves `church:NAME`. Decimal names are numerals; list and pair
/// operations are abstracted over their element types (`church:nil{A}`,
/// `church:pair{A}{B}`).
inline std::optional<Term> lookup(const std::string& name) {
  if (!name.empty() &&
      name.find_first_not_of("0123456789") == std::string::npos) {
    if (name.size() > 6) return std::nullopt;
    return numeral(static_cast<unsigned>(std::stoul(name)));
  }
  if (name == "succ") return nat_ops().succ;
  if (name == "add") return nat_ops().add;
  if (name == "mult") return nat_ops().mult;
  if (name == "pred") return nat_extras().pred;
  if (name == "sub") return nat_extras().sub;
  if (name == "is_zero") return nat_extras().is_zero;
  if (name == "leq") return nat_extras().leq;
  if (name == "true") return bool_ops().true_;
  if (name == "false") return bool_ops().false_;
  if (name == "ite") return bool_ops().ite;
  Type a = Type::var("a");
  Type b = Type::var("b");
  if (name == "nil") return Term::ty_lam("a", list_ops(a).nil);
  if (name == "cons") return Term::ty_lam("a", list_ops(a).cons);
  if (name == "fold") return Term::ty_lam("a", list_ops(a).fold);
  if (name == "pair") return Term::ty_lam("a", Term::ty_lam("b", product_ops(a, b).pair));
  if (name == "fst") return Term::ty_lam("a", Term::ty_lam("b", product_ops(a, b).fst));
  if (name == "snd") return Term::ty_lam("a", Term::ty_lam("b", product_ops(a, b).snd));
  return std::nullopt;
}

}  // namespace fglue::church
