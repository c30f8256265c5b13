// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "calculus.hpp"
#include "error.hpp"
#include "parser.hpp"
#include "random_proof.hpp"
#include "support.hpp"

namespace epsk {
namespace {

Symbol V(const std::string& n) { return Symbol::var(n); }
Symbol A(const std::string& n) { return Symbol::atom(n); }

class Calc : public ::testing::Test {
 protected:
  Signature sig;
  Expr f(const std::string& s) { return parse_formula(s, sig); }
  Expr t(const std::string& s) { return parse_term(s, sig); }
  ProofState start(const std::string& s) { return make_state({Sequent{{f(s)}}}); }
  ProofState start(const std::string& a, const std::string& b) {
    return make_state({Sequent{{f(a), f(b)}}});
  }
  bool has(const ProofState& st, GoalId g, const std::string& s) {
    for (const Expr& e : goal(st, g).formulas)
      if (alpha_equal(e, f(s))) return true;
    return false;
  }
};

TEST_F(Calc, GammaKeepsPrincipalFormula) {
  ProofState st = gamma(start("ex y. P(y)"), 0, 0, t("C"));
  ASSERT_EQ(goal(st, 0).formulas.size(), 2u);
  EXPECT_TRUE(alpha_equal(goal(st, 0).formulas[0], f("P(C)")));
  EXPECT_TRUE(alpha_equal(goal(st, 0).formulas[1], f("ex y. P(y)")));
  ProofState neg = gamma(start("~(all y. P(y))"), 0, 0, t("?z"));
  EXPECT_TRUE(has(neg, 0, "~P(?z)"));
  EXPECT_TRUE(neg.known.count(V("z")));
  EXPECT_EQ(neg.vc, VarCond());
}

TEST_F(Calc, GammaRejectsWrongShape) {
  EXPECT_THROW(gamma(start("all y. P(y)"), 0, 0, t("C")), Error);
  EXPECT_THROW(gamma(start("ex y. P(y)"), 0, 1, t("C")), Error);
  EXPECT_THROW(gamma(start("ex y. P(y)"), 3, 0, t("C")), Error);
  try {
    gamma(start("ex y. P(y)"), 0, 0, Expr::sym(testing::fun_sym("G", 1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Sort);
  }
}

TEST_F(Calc, DeltaMinusBlocksSkolemCapture) {
  // ex y. all x. Q(x, y): after gamma and delta-, ?y may not become !x
  ProofState st = gamma(start("ex y. all x. Q(x, y)"), 0, 0, t("?y"));
  st = delta_minus(st, 0, 0);
  EXPECT_TRUE(has(st, 0, "Q(!x, ?y)"));
  EXPECT_EQ(st.vc.negative(), (EdgeSet{{V("y"), A("x")}}));
  EXPECT_TRUE(st.vc.positive().empty());
  EXPECT_TRUE(st.cc.entries().empty());
  EXPECT_THROW(instantiate_vars(st, Substitution::make({{V("y"), testing::atom("x")}})), Error);
  // the other instance is fine
  EXPECT_NO_THROW(instantiate_vars(st, Substitution::make({{V("y"), testing::cst("C")}})));
}

TEST_F(Calc, DeltaMinusOnNegatedExists) {
  ProofState st = delta_minus(start("~(ex x. P(x))", "R(?u, ?w)"), 0, 0);
  EXPECT_TRUE(has(st, 0, "~P(!x)"));
  EXPECT_EQ(st.vc.negative(), (EdgeSet{{V("u"), A("x")}, {V("w"), A("x")}}));
}

TEST_F(Calc, BetaSplitKeepsNegativeEdgesApart) {
  ProofState st = alpha_beta(start("(all y. R(?a, y)) & (all x. R(?b, x))"), 0, 0, Split::Beta);
  ASSERT_EQ(st.goals.size(), 2u);
  st = delta_minus(st, 0, 0);
  st = delta_minus(st, 1, 0);
  EXPECT_EQ(st.vc.negative(), (EdgeSet{{V("a"), A("y")}, {V("b"), A("x")}}));
  ProofState done = instantiate_vars(
      st, Substitution::make({{V("a"), testing::atom("x")}, {V("b"), testing::atom("y")}}));
  EXPECT_TRUE(has(done, 0, "R(!x, !y)"));
  EXPECT_TRUE(has(done, 1, "R(!y, !x)"));
}

TEST_F(Calc, DeltaPlusRecordsChoice) {
  ProofState st = gamma(start("ex y. all x. y = x"), 0, 0, t("?y"));
  st = delta_plus(st, 0, 0);
  EXPECT_TRUE(has(st, 0, "?y = ?x"));
  EXPECT_EQ(st.vc.positive(), (EdgeSet{{V("y"), V("x")}}));
  ASSERT_TRUE(st.cc.contains(V("x")));
  const CCEntry& e = *st.cc.find(V("x"));
  EXPECT_TRUE(e.lambda_prefix.empty());
  EXPECT_TRUE(alpha_equal(e.eps_term(), t("eps x. ~(?y = x)")));
  EXPECT_TRUE(check_cc(st.cc, st.vc));
  EXPECT_THROW(instantiate_vars(st, Substitution::make({{V("y"), testing::var("x")}})), Error);
}

TEST_F(Calc, DeltaPlusCrossedSwapIsBlocked) {
  ProofState st = alpha_beta(start("(all y. R(?a, y)) & (all x. R(?b, x))"), 0, 0);
  st = delta_plus(st, 0, 0);
  st = delta_plus(st, 1, 0);
  EXPECT_EQ(st.vc.positive(), (EdgeSet{{V("a"), V("y")}, {V("b"), V("x")}}));
  EXPECT_THROW(instantiate_vars(st, Substitution::make({{V("a"), testing::var("x")},
                                                        {V("b"), testing::var("y")}})),
               Error);
}

TEST_F(Calc, HenkinQuantifierByExtension) {
  ProofState st = make_state({});
  std::string henkin =
      "P !x0 ?y1\nP !y0 ?x1\nN ?y1 !y0\nN ?x1 !x0\n";
  VarCond want = parse_varcond(henkin);
  st = extend_vc(st, want.positive(), want.negative());
  EXPECT_EQ(st.vc, want);
  EXPECT_THROW(extend_vc(st, {}, {{V("y1"), A("x0")}}), Error);
  EXPECT_THROW(extend_vc(st, {{A("y0"), V("y1")}}, {}), Error);
}

TEST_F(Calc, AlphaRules) {
  ProofState st = alpha_beta(start("P(C) -> R(C, D)"), 0, 0, Split::Alpha);
  EXPECT_TRUE(has(st, 0, "~P(C)"));
  EXPECT_TRUE(has(st, 0, "R(C, D)"));
  st = alpha_beta(start("~~P(C)"), 0, 0);
  EXPECT_TRUE(has(st, 0, "P(C)"));
  st = alpha_beta(start("~(P(C) & P(D))"), 0, 0);
  EXPECT_EQ(goal(st, 0).formulas.size(), 2u);
  st = alpha_beta(start("false"), 0, 0);
  EXPECT_TRUE(goal(st, 0).formulas.empty());
  EXPECT_THROW(alpha_beta(start("P(C) & P(D)"), 0, 0, Split::Alpha), Error);
  EXPECT_THROW(alpha_beta(start("P(C) | P(D)"), 0, 0, Split::Beta), Error);
  EXPECT_THROW(alpha_beta(start("P(C)"), 0, 0), Error);
}

TEST_F(Calc, BetaOnIff) {
  ProofState st = alpha_beta(start("P(C) <-> P(D)"), 0, 0);
  ASSERT_EQ(st.goals.size(), 2u);
  EXPECT_TRUE(has(st, 0, "~P(C)"));
  EXPECT_TRUE(has(st, 0, "P(D)"));
  EXPECT_TRUE(has(st, 1, "P(C)"));
  EXPECT_TRUE(has(st, 1, "~P(D)"));
}

TEST_F(Calc, CloseForms) {
  EXPECT_TRUE(close(start("P(C)", "~P(C)"), 0).goals.empty());
  EXPECT_TRUE(closable(start("C = C"), 0));
  EXPECT_TRUE(closable(start("true"), 0));
  EXPECT_TRUE(closable(start("~false"), 0));
  EXPECT_TRUE(closable(start("(eps x. P(x)) = eps y. P(y)"), 0));
  EXPECT_FALSE(closable(start("C = D"), 0));
  EXPECT_FALSE(closable(start("P(C)", "~P(D)"), 0));
  ProofState st = add_axiom(start("F(Jesus) = Peter"), f("F(Jesus) = Peter"));
  EXPECT_TRUE(closable(st, 0));
  try {
    close(start("P(C)"), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Rule);
  }
  ProofState c = close(start("true"), 0);
  EXPECT_EQ(c.closed, std::vector<GoalId>{0});
}

TEST_F(Calc, InstantiationAddsObligations) {
  ChoiceCondition cc = parse_cc("?z0 := eps z. F(z, Jesus)\n?z1 := eps z. F(z, Jesus)\n", sig);
  ProofState st = start("HG = ?z0 & Joseph = ?z1");
  st.cc = cc;
  st.known.insert(V("z0"));
  st.known.insert(V("z1"));
  Substitution s = Substitution::make({{V("z0"), t("HG")}, {V("z1"), t("Joseph")}});
  Obligations ob = obligations(st, s);
  EXPECT_EQ(ob.m, (SymbolSet{V("z0"), V("z1")}));
  EXPECT_EQ(ob.o, ob.m);
  EXPECT_TRUE(ob.o_prime.empty());
  ProofState out = instantiate_vars(st, s);
  EXPECT_TRUE(out.cc.entries().empty());
  ASSERT_EQ(out.goals.size(), 3u);
  EXPECT_TRUE(has(out, 0, "HG = HG & Joseph = Joseph"));
  EXPECT_TRUE(has(out, 1, "(ex z. F(z, Jesus)) -> F(HG, Jesus)"));
  EXPECT_TRUE(has(out, 2, "(ex z. F(z, Jesus)) -> F(Joseph, Jesus)"));
}

TEST_F(Calc, UnreachableChoiceVariableNeedsNoObligation) {
  ChoiceCondition cc = parse_cc("?w := eps w. P(w)\n", sig);
  ProofState st = start("P(?x)");
  st.cc = cc;
  st.known.insert(V("w"));
  Substitution s = Substitution::make({{V("w"), t("C")}});
  Obligations ob = obligations(st, s);
  EXPECT_TRUE(ob.o.empty());
  EXPECT_EQ(ob.o_prime, SymbolSet{V("w")});
  ProofState out = instantiate_vars(st, s);
  EXPECT_EQ(out.goals.size(), 1u);
  EXPECT_FALSE(out.cc.contains(V("w")));
}

TEST_F(Calc, PredecessorObligation) {
  ChoiceCondition cc = parse_cc("?y := \\v0. eps v1. (v0 = Plus(v1, One))\n", sig);
  ProofState st = start("all n. P(?y(n))");
  st.cc = cc;
  Symbol y = cc.entries().begin()->first;
  Substitution s = Substitution::make({{y, Expr::sym(testing::fun_sym("Pred", 1))}});
  ProofState out = instantiate_vars(st, s);
  ASSERT_EQ(out.goals.size(), 2u);
  EXPECT_TRUE(has(out, 0, "all n. P(Pred(n))"));
  EXPECT_TRUE(has(out, 1, "all v0. ((ex v1. v0 = Plus(v1, One)) -> v0 = Plus(Pred(v0), One))"));
}

TEST_F(Calc, AtomInstantiationNeedsNegativeEdges) {
  ProofState st = delta_minus(start("all x. P(x)", "R(?y, C)"), 0, 0);
  EXPECT_NO_THROW(instantiate_atoms(st, 0, Substitution::make({{A("x"), t("C")}})));
  ProofState plain = start("P(!a)", "R(?y, C)");
  EXPECT_THROW(instantiate_atoms(plain, 0, Substitution::make({{A("a"), t("C")}})), Error);
  ProofState ground = start("P(!a)");
  ProofState out = instantiate_atoms(ground, 0, Substitution::make({{A("a"), t("C")}}));
  EXPECT_TRUE(has(out, 0, "P(C)"));
  EXPECT_THROW(instantiate_atoms(ground, 0, Substitution::make({{V("q"), t("C")}})), Error);
}

TEST_F(Calc, MintAvoidsKnownNames) {
  ProofState st = start("P(?x)", "P(!x0)");
  Symbol a = mint(st, SymbolClass::FreeAtom, "x", Sort());
  EXPECT_NE(a.name, "x");
  EXPECT_NE(a.name, "x0");
  Symbol b = mint(st, SymbolClass::FreeVar, "y", Sort());
  EXPECT_EQ(b.name, "y");
  Symbol c = mint(st, SymbolClass::FreeVar, "y", Sort(), true);
  EXPECT_NE(c.name, "y");
  EXPECT_TRUE(st.known.count(a) && st.known.count(b) && st.known.count(c));
}

// ---- properties ------------------------------------------------------------

TEST(Property, RulesYieldExtendedExtensions) {
  testing::Gen gen(7);
  int applied = 0;
  for (int run = 0; run < 150; ++run) {
    ProofState st = make_state({Sequent{{gen.formula(3)}}});
    for (int k = 0; k < 15; ++k) {
      testing::Step step = testing::random_step(gen, st);
      if (step.rule.empty()) continue;
      ++applied;
      const ProofState& a = step.before;
      const ProofState& b = step.after;
      ASSERT_TRUE(check_cc(b.cc, b.vc)) << step.rule;
      if (step.rule != "subst") {
        ASSERT_TRUE(is_extended_extension(a.cc, a.vc, b.cc, b.vc)) << step.rule;
      } else {
        ASSERT_TRUE(is_weak_extension(a.vc, b.vc));
        for (const auto& [y, e] : b.cc.entries()) ASSERT_TRUE(a.cc.contains(y));
      }
      st = b;
    }
  }
  EXPECT_GT(applied, 800);
}

}  // namespace
}  // namespace epsk
