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

#include "fglue/formula.hpp"
#include "fglue/glue.hpp"
#include "fglue/parser.hpp"
#include "fglue/readback.hpp"
#include "fglue/reduce.hpp"
#include "support/formula_reader.hpp"
#include "support/oracles.hpp"

namespace fglue {
namespace {

const char* kSig = R"(
sort e. sort t. sort human.
const and : t -> t -> t [connective].
const or : t -> t -> t [connective].
const imp : t -> t -> t [connective].
const not : t -> t [connective].
const forall : Pi a. (a -> t) -> t [quantifier].
const exists : Pi a. (a -> t) -> t [quantifier].
const most : Pi a. (a -> t) -> (a -> t) -> t [quantifier].
const tau : Pi a. (a -> t) -> e [choice].
const cat : e -> t [predicate].
const sleeps : e -> t [predicate].
const tired : human -> t [predicate].
const likes : e -> e -> t [predicate].
const p0 : t [predicate].
const c : e [function].
const mother : e -> e [function].
const junk : e.
)";

class Readback : public ::testing::Test {
 protected:
  Signature sig = load_signature(kSig);

  Term term(const char* src) {
    return parse_term(src, ParseScope::for_signature(sig));
  }
  Formula read(const char* src) { return readback_formula(sig, term(src)); }
  std::string printed(const char* src) { return print_formula(read(src)); }
  ErrorKind failure(const char* src) {
    try {
      read(src);
    } catch (const Error& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error for " << src;
    return ErrorKind::Io;
  }
};

TEST(TypeOrder, Recursion) {
  EXPECT_EQ(type_order(parse_type("e")), 1);
  EXPECT_EQ(type_order(parse_type("t")), 0);
  EXPECT_EQ(type_order(parse_type("e -> t")), 2);
  EXPECT_EQ(type_order(parse_type("(e -> t) -> t")), 3);
  EXPECT_EQ(type_order(parse_type("e -> e")), 2);
  EXPECT_EQ(type_order(parse_type("e -> e -> t")), 2);
}

TEST(TypeOrder, PiIsNotOrderable) {
  try {
    type_order(parse_type("Pi a. a -> t"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PiNotOrderable);
  }
  EXPECT_THROW(type_order(parse_type("q")), Error);
}

TEST_F(Readback, EveryCatSleeps) {
  Formula f = read("forall{e}(lam x:e. imp (cat x) (sleeps x))");
  ASSERT_EQ(f.kind, Formula::Kind::Quant);
  EXPECT_EQ(f.quant, Quantifier::Forall);
  EXPECT_TRUE(alpha_eq(*f.sort, Type::sort("e")));
  EXPECT_EQ(f.var, "x");
  const Formula& body = f.body();
  ASSERT_EQ(body.kind, Formula::Kind::Conn);
  EXPECT_EQ(body.conn, Connective::Imp);
  EXPECT_EQ(body.operands[0].pred, "cat");
  EXPECT_EQ(body.operands[1].pred, "sleeps");
  EXPECT_EQ(print_formula(f), "forall x:e. (cat(x) -> sleeps(x))");
}

TEST_F(Readback, ZeroAryAtom) {
  Formula f = read("p0");
  EXPECT_EQ(f.kind, Formula::Kind::Atom);
  EXPECT_EQ(f.pred, "p0");
  EXPECT_TRUE(f.args.empty());
  EXPECT_EQ(print_formula(f), "p0");
}

TEST_F(Readback, ChoiceArgument) {
  Formula f = read("sleeps (tau{human} (lam x:human. tired x))");
  ASSERT_EQ(f.kind, Formula::Kind::Atom);
  ASSERT_EQ(f.args.size(), 1u);
  const LogicTerm& arg = f.args[0];
  ASSERT_EQ(arg.kind, LogicTerm::Kind::Choice);
  EXPECT_EQ(arg.choice, ChoiceKind::Tau);
  EXPECT_TRUE(alpha_eq(*arg.sort, Type::sort("human")));
  EXPECT_EQ(print_formula(f), "sleeps(tau x:human. tired(x))");
}

TEST_F(Readback, FunctionsAndConstants) {
  EXPECT_EQ(printed("likes c (mother c)"), "likes(c, mother(c))");
  EXPECT_EQ(printed("exists{e} (lam y:e. likes y (mother y))"),
            "exists y:e. likes(y, mother(y))");
}

TEST_F(Readback, ConnectivesAreFullyParenthesized) {
  EXPECT_EQ(printed("and (or p0 p0) (not (cat c))"),
            "((p0 | p0) & ~cat(c))");
  EXPECT_EQ(printed("not (forall{e} cat)"), "~(forall x:e. cat(x))");
}

TEST_F(Readback, EtaShortQuantifierArgumentIsExpanded) {
  Formula f = read("forall{e} cat");
  EXPECT_EQ(print_formula(f), "forall x:e. cat(x)");
  EXPECT_EQ(print_formula(read("forall{e} (lam x:e. exists{e} (likes x))")),
            "forall x:e. exists x':e. likes(x, x')");
}

TEST_F(Readback, MostCarriesRestrictor) {
  Formula f = read("most{e} cat sleeps");
  ASSERT_EQ(f.kind, Formula::Kind::Quant);
  EXPECT_EQ(f.quant, Quantifier::Most);
  ASSERT_EQ(f.operands.size(), 2u);
  EXPECT_EQ(print_formula(f), "most x:e. [cat(x)] sleeps(x)");
}

TEST_F(Readback, HigherOrderQuantification) {
  Formula f = read("forall{e -> t} (lam P:e -> t. P c)");
  EXPECT_EQ(print_formula(f), "forall P:e -> t. P(c)");
  EXPECT_TRUE(f.body().pred_is_var);
  EXPECT_EQ(classify_order(f).order, 2);
}

TEST_F(Readback, Errors) {
  EXPECT_EQ(failure("(lam x:e. cat x) c"), ErrorKind::NotNormal);
  EXPECT_EQ(failure("c"), ErrorKind::NotTypeT);
  EXPECT_EQ(failure("cat"), ErrorKind::NotTypeT);
  EXPECT_EQ(failure("cat junk"), ErrorKind::NonLogicalConstant);
}

TEST(ReadbackFlags, UnflaggedChoiceIsNonLogical) {
  Signature sig = load_signature(R"(
    sort e. sort t. sort human.
    const tau : Pi a. (a -> t) -> e.
    const sleeps : e -> t [predicate].
    const tired : human -> t [predicate].
  )");
  Term t = parse_term("sleeps (tau{human} (lam x:human. tired x))",
                      ParseScope::for_signature(sig));
  try {
    readback_formula(sig, t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonLogicalConstant);
    EXPECT_NE(std::string(e.what()).find("tau"), std::string::npos);
  }
}

TEST_F(Readback, ClassifyOrder) {
  OrderReport every = classify_order(read("forall{e}(lam x:e. imp (cat x) (sleeps x))"));
  EXPECT_EQ(every.order, 1);
  EXPECT_FALSE(every.omega);
  ASSERT_EQ(every.witnesses.size(), 1u);
  EXPECT_EQ(every.witnesses[0].second, 1);
  OrderReport atom = classify_order(read("p0"));
  EXPECT_EQ(atom.order, 1);
  EXPECT_TRUE(atom.witnesses.empty());
  EXPECT_EQ(atom.label(), "1");
  OrderReport choice = classify_order(read("sleeps (tau{human} tired)"));
  EXPECT_EQ(choice.order, 1);
  ASSERT_EQ(choice.witnesses.size(), 1u);
  EXPECT_TRUE(alpha_eq(choice.witnesses[0].first, Type::sort("human")));
}

TEST_F(Readback, OmegaAboveCap) {
  Formula f = read("forall{(e -> t) -> t} (lam Q:(e -> t) -> t. Q cat)");
  EXPECT_EQ(classify_order(f).order, 3);
  OrderReport capped = classify_order(f, 2);
  EXPECT_TRUE(capped.omega);
  EXPECT_EQ(capped.label(), "omega");
}

TEST(PrintFormula, Shapes) {
  Type e = Type::sort("e");
  Formula cat = Formula::atom("cat", {LogicTerm::ind_var("x", e)});
  EXPECT_EQ(print_formula(Formula::quantified(Quantifier::Forall, e, "x", {cat})),
            "forall x:e. cat(x)");
  Formula nested = Formula::connective(
      Connective::And,
      {Formula::connective(Connective::Or, {cat, cat}), Formula::connective(Connective::Not, {cat})});
  EXPECT_EQ(print_formula(nested), "((cat(x) | cat(x)) & ~cat(x))");
  Formula tired = Formula::atom("tired", {LogicTerm::ind_var("x", Type::sort("human"))});
  LogicTerm choice = LogicTerm::choice_term(ChoiceKind::Tau, Type::sort("human"), "x", tired);
  EXPECT_EQ(to_string(choice), "tau x:human. tired(x)");
  EXPECT_EQ(print_formula(Formula::atom("sleeps", {choice})),
            "sleeps(tau x:human. tired(x))");
}

TEST_F(Readback, FormulaRoundTrip) {
  for (const char* src : {
           "forall{e}(lam x:e. imp (cat x) (sleeps x))",
           "p0",
           "sleeps (tau{human} (lam x:human. tired x))",
           "and (or p0 p0) (not (cat c))",
           "most{e} cat sleeps",
           "forall{e -> t} (lam P:e -> t. P c)",
           "forall{e} (lam x:e. exists{e} (lam y:e. likes x (mother y)))",
           "not (forall{e} cat)",
       }) {
    Formula f = read(src);
    Formula back = testing::read_formula(sig, print_formula(f));
    EXPECT_EQ(back, f) << src << " printed as " << print_formula(f);
    EXPECT_TRUE(testing::sorts_sound(f)) << src;
  }
}

TEST_F(Readback, SortSoundnessOracleDetectsMismatch) {
  Type e = Type::sort("e");
  Formula bad = Formula::quantified(
      Quantifier::Forall, e, "x",
      {Formula::atom("tired", {LogicTerm::ind_var("x", Type::sort("human"))})});
  EXPECT_FALSE(testing::sorts_sound(bad));
  Formula unbound = Formula::atom("cat", {LogicTerm::ind_var("y", e)});
  EXPECT_FALSE(testing::sorts_sound(unbound));
}

}  // namespace
}  // namespace fglue
