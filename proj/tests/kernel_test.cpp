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

#include <gtest/gtest.h>

#include "fglue/parser.hpp"
#include "fglue/reduce.hpp"
#include "fglue/term.hpp"
#include "fglue/type.hpp"
#include "fglue/typecheck.hpp"

namespace fglue {
namespace {

Type ty(const char* src) { return parse_type(src); }
Term tm(const char* src) { return parse_term(src); }

Signature sig_with(std::initializer_list<std::pair<const char*, const char*>> consts) {
  Signature sig = Signature::minimal();
  for (auto [name, type] : consts) sig.declare_constant(name, ty(type));
  return sig;
}

TEST(ParseType, ChurchNumeralType) {
  Type t = ty("Pi p . (p -> p) -> p -> p");
  ASSERT_TRUE(t.is_pi());
  EXPECT_EQ(t.name(), "p");
  Type pp = Type::arrow(Type::var("p"), Type::var("p"));
  EXPECT_TRUE(alpha_eq(t, Type::pi("p", Type::arrow(pp, pp))));
  EXPECT_EQ(to_string(t), "Pi p. (p -> p) -> p -> p");
}

TEST(ParseType, SingleIdentifierIsSort) {
  Type t = ty("e");
  EXPECT_TRUE(t.is_sort());
  EXPECT_EQ(t.name(), "e");
}

TEST(ParseType, TauShape) {
  Type t = ty("Pi a . (a -> t) -> e");
  Type a = Type::var("a");
  Type expected = Type::pi(
      "a", Type::arrow(Type::arrow(a, Type::sort("t")), Type::sort("e")));
  EXPECT_TRUE(alpha_eq(t, expected));
}

TEST(ParseType, ArrowIsRightAssociative) {
  EXPECT_TRUE(alpha_eq(ty("e -> e -> t"), ty("e -> (e -> t)")));
  EXPECT_FALSE(alpha_eq(ty("e -> e -> t"), ty("(e -> e) -> t")));
}

TEST(ParseType, UnboundNameIsFreeVariable) {
  Type t = ty("q -> e");
  EXPECT_TRUE(t.domain().is_var());
  EXPECT_EQ(free_type_vars(t), NameSet{"q"});
}

TEST(ParseType, SyntaxErrorCarriesPosition) {
  try {
    ty("e ->\n  -> t");
    FAIL() << "expected a syntax error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Syntax);
    EXPECT_EQ(e.pos().line, 2);
    EXPECT_EQ(e.pos().column, 3);
  }
}

TEST(ParseType, BinderMayNotShadowSort) {
  EXPECT_THROW(ty("Pi e. e"), Error);
}

TEST(ParseTerm, ChurchTwo) {
  Term t = tm("Lam p . lam f : p -> p . lam x : p . f (f x)");
  ASSERT_TRUE(t.is(Term::Kind::TyLam));
  Term f = t.body();
  ASSERT_TRUE(f.is(Term::Kind::Lam));
  EXPECT_TRUE(alpha_eq(f.type(), Type::arrow(Type::var("p"), Type::var("p"))));
  Term body = f.body().body();
  EXPECT_EQ(to_string(body), "f (f x)");
  EXPECT_TRUE(body.fun().is(Term::Kind::Var));
}

TEST(ParseTerm, IdentityOnE) {
  Term t = tm("lam x : e . x");
  EXPECT_TRUE(alpha_eq(t, Term::lam("x", Type::sort("e"), Term::var("x"))));
}

TEST(ParseTerm, TypeApplicationOfConstant) {
  ParseScope scope;
  scope.sorts.insert("human");
  Term t = parse_term("forall {human}", scope);
  ASSERT_TRUE(t.is(Term::Kind::TyApp));
  EXPECT_TRUE(t.fun().is(Term::Kind::Const));
  EXPECT_EQ(t.fun().name(), "forall");
  EXPECT_TRUE(alpha_eq(t.type(), Type::sort("human")));
}

TEST(ParseTerm, ApplicationIsLeftAssociative) {
  Term t = tm("f a b");
  EXPECT_EQ(to_string(t.fun()), "f a");
  Term u = tm("forall{e} P");
  EXPECT_TRUE(u.fun().is(Term::Kind::TyApp));
}

TEST(ParseTerm, ErrorPosition) {
  try {
    tm("lam x : e x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Syntax);
    EXPECT_EQ(e.pos().line, 1);
    EXPECT_EQ(e.pos().column, 11);
  }
}

TEST(SubstTerm, NoCapture) {
  Term body = tm("f (f x)");
  ParseScope scope;
  scope.variables = {"f", "x"};
  body = parse_term("f (f x)", scope);
  Term r = subst_term(body, "x", Term::constant("c"));
  EXPECT_EQ(to_string(r), "f (f c)");
}

TEST(SubstTerm, RenamesCapturingBinder) {
  ParseScope scope;
  scope.variables = {"x"};
  Term body = parse_term("lam y:e. x", scope);
  Term r = subst_term(body, "x", Term::var("y"));
  ASSERT_TRUE(r.is(Term::Kind::Lam));
  EXPECT_EQ(r.name(), "y'");
  EXPECT_TRUE(r.body().is(Term::Kind::Var));
  EXPECT_EQ(r.body().name(), "y");
  EXPECT_EQ(free_vars(r), NameSet{"y"});
}

TEST(SubstTerm, BoundOccurrenceUntouched) {
  Term body = tm("lam x:e. x");
  Term r = subst_term(body, "x", Term::constant("c"));
  EXPECT_TRUE(r.same_node(body));
}

TEST(SubstTerm, RenamesTypeBinderCapturingReplacementTypeVariable) {
  // (Λa. z)[z := λw:a. w] must not capture the free a.
  ParseScope scope;
  scope.variables = {"z"};
  Term body = parse_term("Lam a. z", scope);
  Term repl = parse_term("lam w:a. w");
  Term r = subst_term(body, "z", repl);
  ASSERT_TRUE(r.is(Term::Kind::TyLam));
  EXPECT_NE(r.name(), "a");
  EXPECT_EQ(free_type_vars(r), NameSet{"a"});
}

TEST(SubstTypeInTerm, InstantiatesAnnotations) {
  Term body = tm("lam f:p -> p. lam x:p. f (f x)");
  Term r = subst_type_in_term(body, "p", Type::sort("A"));
  ParseScope scope;
  scope.sorts.insert("A");
  EXPECT_TRUE(alpha_eq(r, parse_term("lam f:A -> A. lam x:A. f (f x)", scope)));
}

TEST(SubstTypeInTerm, AbsentVariableLeavesTermUnchanged) {
  Term body = tm("Lam p. lam x:p. x");
  Term r = subst_type_in_term(body, "q", Type::sort("A"));
  EXPECT_TRUE(r.same_node(body));
}

TEST(SubstTypeInTerm, RenamesCapturingTypeBinder) {
  Term body = tm("Lam p. lam x:q. x");
  Term r = subst_type_in_term(body, "q", Type::var("p"));
  ASSERT_TRUE(r.is(Term::Kind::TyLam));
  EXPECT_EQ(r.name(), "p'");
  EXPECT_TRUE(r.body().type().is_var());
  EXPECT_EQ(r.body().type().name(), "p");
  EXPECT_EQ(free_type_vars(r), NameSet{"p"});
}

TEST(AlphaEq, Types) {
  EXPECT_TRUE(alpha_eq(ty("Pi p. p -> p"), ty("Pi q. q -> q")));
  EXPECT_FALSE(alpha_eq(ty("Pi p. p -> p"), ty("Pi p. p -> t")));
  EXPECT_FALSE(alpha_eq(ty("Pi p. Pi q. p -> q"), ty("Pi p. Pi q. q -> p")));
  EXPECT_FALSE(alpha_eq(ty("Pi p. p"), ty("p")));
}

TEST(AlphaEq, Terms) {
  EXPECT_TRUE(alpha_eq(tm("lam x:e. x"), tm("lam y:e. y")));
  EXPECT_TRUE(alpha_eq(tm("Lam p. lam x:p. x"), tm("Lam q. lam y:q. y")));
  EXPECT_FALSE(alpha_eq(tm("lam x:e. lam y:e. x"), tm("lam x:e. lam y:e. y")));
  EXPECT_FALSE(alpha_eq(tm("lam x:e. c"), tm("lam x:t. c")));
}

TEST(Typecheck, ChurchTwoHasNumeralType) {
  Term two = tm("Lam p . lam f : p -> p . lam x : p . f (f x)");
  Type t = typecheck(Context{}, two);
  EXPECT_TRUE(alpha_eq(t, ty("Pi p. (p -> p) -> (p -> p)")));
}

TEST(Typecheck, QuantifierSpecialization) {
  Signature sig = sig_with({{"forall", "Pi a. (a -> t) -> t"}});
  sig.declare_sort("human");
  ParseScope scope = ParseScope::for_signature(sig);
  Type t = typecheck(sig, parse_term("forall{human}", scope));
  EXPECT_TRUE(alpha_eq(t, parse_type("(human -> t) -> t", scope)));
}

TEST(Typecheck, SideConditionViolation) {
  try {
    typecheck(Context{}, tm("lam x:p. Lam p. x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SideConditionViolation);
  }
}

TEST(Typecheck, SideConditionAppliesToContextVariables) {
  Context ctx;
  ctx.bind("y", Type::var("p"));
  ParseScope scope;
  scope.variables = {"y"};
  EXPECT_THROW(typecheck(ctx, parse_term("Lam p. y", scope)), Error);
  EXPECT_NO_THROW(typecheck(ctx, parse_term("Lam q. y", scope)));
}

TEST(Typecheck, ErrorKinds) {
  Signature sig = sig_with({{"c", "e"}, {"P", "e -> t"}, {"id", "Pi a. a -> a"}});
  ParseScope scope = ParseScope::for_signature(sig);
  auto kind_of = [&](const char* src) {
    try {
      typecheck(sig, parse_term(src, scope));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;  // sentinel: no error
  };
  EXPECT_EQ(kind_of("P P"), ErrorKind::TypeMismatch);
  EXPECT_EQ(kind_of("c c"), ErrorKind::NotAFunction);
  EXPECT_EQ(kind_of("id c"), ErrorKind::NotAFunction);
  EXPECT_EQ(kind_of("c{e}"), ErrorKind::NotAPiType);
  EXPECT_EQ(kind_of("nope"), ErrorKind::UndeclaredConstant);
  EXPECT_EQ(kind_of("P c"), ErrorKind::Io);
}

TEST(Typecheck, UndeclaredSortAndUnboundVariable) {
  Signature sig = Signature::minimal();
  ParseScope scope;
  scope.sorts = {"e", "t", "human"};
  try {
    typecheck(sig, parse_term("lam x:human. x", scope));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UndeclaredSort);
  }
  scope.variables = {"z"};
  try {
    typecheck(sig, parse_term("z", scope));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnboundVariable);
  }
}

TEST(Typecheck, MismatchReportsPosition) {
  Signature sig = sig_with({{"P", "e -> t"}, {"q", "t"}});
  ParseScope scope = ParseScope::for_signature(sig);
  try {
    typecheck(sig, parse_term("P\n   q", scope));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TypeMismatch);
    EXPECT_EQ(e.pos().line, 2);
    EXPECT_EQ(e.pos().column, 4);
  }
}

TEST(Context, RejectsDuplicateBinding) {
  Context ctx;
  ctx.bind("x", Type::sort("e"));
  EXPECT_THROW(ctx.bind("x", Type::sort("t")), Error);
}

TEST(Step, BetaTerm) {
  Signature sig = sig_with({{"c", "e"}});
  Term t = parse_term("(lam x:e. x) c", ParseScope::for_signature(sig));
  auto r = step(t);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->rule, Rule::BetaTerm);
  EXPECT_TRUE(alpha_eq(r->term, Term::constant("c")));
}

TEST(Step, BetaType) {
  auto r = step(tm("(Lam p. lam x:p. x){e}"));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->rule, Rule::BetaType);
  EXPECT_TRUE(alpha_eq(r->term, tm("lam x:e. x")));
}

TEST(Step, NormalTermHasNoStep) {
  EXPECT_FALSE(step(tm("lam x:e. x")));
}

TEST(Step, LeftmostOutermostFirst) {
  // Outer redex is contracted before the inner one in the argument.
  Term t = tm("(lam y:e. c) ((lam z:e. z) c)");
  auto r = step(t);
  ASSERT_TRUE(r);
  EXPECT_TRUE(alpha_eq(r->term, Term::constant("c")));
}

TEST(Normalize, AlreadyNormalTakesZeroSteps) {
  Term t = tm("lam x:e. x");
  NormalForm nf = normalize(Context{}, t);
  EXPECT_EQ(nf.steps, 0u);
  EXPECT_TRUE(alpha_eq(nf.term, t));
}

TEST(Normalize, TypeThenTermChain) {
  Signature sig = sig_with({{"c3", "e"}, {"s", "e -> e"}});
  Term t = parse_term(
      "(Lam p. lam f:p -> p. lam x:p. f (f x)){e} s c3",
      ParseScope::for_signature(sig));
  ASSERT_TRUE(alpha_eq(typecheck(sig, t), Type::sort("e")));
  NormalForm nf = normalize(Context(sig), t);
  EXPECT_EQ(to_string(nf.term), "s (s c3)");
  EXPECT_EQ(nf.steps, 3u);
  EXPECT_LT(nf.steps, kDefaultFuel);
}

TEST(Normalize, FuelExhaustion) {
  Term t = tm("(Lam p. lam x:p. x){e} c");
  Context ctx;
  ctx.fuel = 1;
  try {
    normalize(ctx, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FuelExhausted);
  }
  ctx.fuel = 2;
  EXPECT_EQ(normalize(ctx, t).steps, 2u);
}

TEST(Normalize, ObserverSeesEveryStep) {
  Term t = tm("(Lam p. lam x:p. x){e} c");
  std::vector<Rule> rules;
  std::vector<std::string> terms;
  normalize(Context{}, t, [&](std::uint64_t k, const Reduction& r) {
    EXPECT_EQ(k, rules.size() + 1);
    rules.push_back(r.rule);
    terms.push_back(to_string(r.term));
  });
  EXPECT_EQ(rules, (std::vector<Rule>{Rule::BetaType, Rule::BetaTerm}));
  EXPECT_EQ(terms, (std::vector<std::string>{"(lam x:e. x) c", "c"}));
}

TEST(Print, ParenthesizesWhereNeeded) {
  EXPECT_EQ(to_string(tm("(lam x:e. x) c")), "(lam x:e. x) c");
  EXPECT_EQ(to_string(tm("f (g c)")), "f (g c)");
  EXPECT_EQ(to_string(tm("f (id{e})")), "f (id{e})");
  EXPECT_EQ(to_string(tm("lam x:Pi a. a -> a. x")), "lam x:(Pi a. a -> a). x");
  EXPECT_EQ(to_string(ty("(Pi a. a) -> e")), "(Pi a. a) -> e");
  EXPECT_EQ(to_string(ty("e -> Pi a. a")), "e -> Pi a. a");
}

}  // namespace
}  // namespace fglue
