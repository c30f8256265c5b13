// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "error.hpp"
#include "support.hpp"
#include "varcond.hpp"

namespace epsk {
namespace {

Symbol V(const std::string& n) { return Symbol::var(n); }
Symbol A(const std::string& n) { return Symbol::atom(n); }

std::string read(const std::string& name) {
  std::ifstream in(std::string(EPSK_TEST_DATA) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Consistency, EmptyGraph) { EXPECT_TRUE(is_consistent(VarCond())); }

TEST(Consistency, DeltaPlusCycle) {
  VarCond vc({{V("y"), V("x")}}, {});
  EXPECT_TRUE(is_consistent(vc));
  VarCond bad = vc.with_positive({{V("x"), V("y")}});
  EXPECT_FALSE(is_consistent(bad));
  auto v = find_violation(bad);
  ASSERT_TRUE(v);
  EXPECT_FALSE(v->n_edge);
  EXPECT_EQ(v->cycle.front(), v->cycle.back());
}

TEST(Consistency, HenkinTwoNegativeEdges) {
  VarCond vc({{A("x0"), V("y1")}, {A("y0"), V("x1")}}, {{V("y1"), A("y0")}, {V("x1"), A("x0")}});
  EXPECT_TRUE(is_consistent(vc));
  EXPECT_EQ(vc, parse_varcond(read("henkin.vc")));
}

TEST(Consistency, SingleNegativeEdgeCycle) {
  VarCond vc({}, {{V("y"), A("x")}});
  EXPECT_TRUE(is_consistent(vc));
  VarCond bad = vc.with_positive({{A("x"), V("y")}});
  EXPECT_FALSE(is_consistent(bad));
  auto v = find_violation(bad);
  ASSERT_TRUE(v);
  ASSERT_TRUE(v->n_edge);
  EXPECT_EQ(*v->n_edge, Edge(V("y"), A("x")));
  EXPECT_NE(v->describe().find("exactly one N edge"), std::string::npos);
}

TEST(Consistency, CrossedSwapGraphs) {
  // delta-: N = {(a, y), (b, x)} and the swap a -> x, b -> y is admissible
  VarCond minus({}, {{V("a"), A("y")}, {V("b"), A("x")}});
  Substitution s1 = Substitution::make({{V("a"), testing::atom("x")}, {V("b"), testing::atom("y")}});
  EXPECT_TRUE(is_pn_substitution(minus, s1));
  // delta+: P' = {(a, y1), (b, x1)}; the analogous swap closes a P cycle
  VarCond plus({{V("a"), V("y1")}, {V("b"), V("x1")}}, {});
  EXPECT_TRUE(is_consistent(plus));
  Substitution s2 = Substitution::make({{V("a"), testing::var("x1")}, {V("b"), testing::var("y1")}});
  EXPECT_FALSE(is_pn_substitution(plus, s2));
}

TEST(VarCond, RejectsBadEdgeClasses) {
  EXPECT_THROW(VarCond({{V("x"), A("a")}}, {}), Error);
  EXPECT_THROW(VarCond({}, {{A("a"), V("x")}}), Error);
  EXPECT_THROW(VarCond({{Symbol::bound("b"), V("x")}}, {}), Error);
}

TEST(SigmaUpdate, Examples) {
  VarCond vc;
  EXPECT_EQ(sigma_update(vc, Substitution()), vc);
  VarCond r = sigma_update(vc, Substitution::make({{V("x"), testing::var("y")}}));
  EXPECT_EQ(r.positive(), (EdgeSet{{V("y"), V("x")}}));
  Substitution ground = Substitution::make({{V("z0"), testing::cst("HG")}});
  EXPECT_TRUE(dependence(ground).empty());
  EXPECT_EQ(sigma_update(vc, ground), vc);
}

TEST(PnSubstitution, Examples) {
  VarCond vc({{V("y"), V("x")}}, {{V("q"), A("x")}});
  EXPECT_TRUE(is_pn_substitution(vc, Substitution()));
  EXPECT_FALSE(is_pn_substitution(VarCond({}, {{V("y"), A("x")}}),
                                  Substitution::make({{V("y"), testing::atom("x")}})));
  EXPECT_FALSE(is_pn_substitution(VarCond({{V("y"), V("x")}}, {}),
                                  Substitution::make({{V("y"), testing::var("x")}})));
}

TEST(WeakExtension, Examples) {
  VarCond vc({{V("a"), V("c")}}, {{V("c"), A("n")}});
  EXPECT_TRUE(is_weak_extension(vc, vc));
  VarCond base({{V("a"), V("c")}}, {});
  VarCond ext({{V("a"), V("b")}, {V("b"), V("c")}}, {});
  EXPECT_TRUE(is_weak_extension(base, ext));
  EXPECT_FALSE(is_weak_extension(ext, base));
  EXPECT_FALSE(is_weak_extension(VarCond({}, {{V("y"), A("x")}}), VarCond()));
}

TEST(Closure, ReachabilityHelpers) {
  EdgeSet r = {{V("a"), V("b")}, {V("b"), V("c")}};
  EdgeSet tc = transitive_closure(r);
  EXPECT_TRUE(tc.count({V("a"), V("c")}));
  EXPECT_EQ(tc.size(), 3u);
  EXPECT_EQ(reaching(r, {V("c")}), (SymbolSet{V("a"), V("b"), V("c")}));
  EXPECT_EQ(reachable_plus(r, {V("a")}), (SymbolSet{V("b"), V("c")}));
}

TEST(Format, ParseAndDot) {
  VarCond vc = parse_varcond("# c\nP !x0 ?y1\n\nN ?y1 !y0  # trailing\n");
  EXPECT_EQ(vc.positive().size(), 1u);
  EXPECT_EQ(vc.negative().size(), 1u);
  EXPECT_EQ(parse_varcond(format_varcond(vc)), vc);
  std::string dot = to_dot(vc);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("\"?y1\" -> \"!y0\" [style=dashed]"), std::string::npos);
  EXPECT_THROW(parse_varcond("Q ?a ?b"), Error);
  EXPECT_THROW(parse_varcond("P ?a"), Error);
  EXPECT_THROW(parse_varcond("N !a ?b"), Error);
}

// ---- properties ------------------------------------------------------------

TEST(Property, AgreesWithSimpleCycleOracle) {
  std::mt19937 rng(2024);
  int inconsistent = 0;
  for (int k = 0; k < 2000; ++k) {
    auto g = testing::random_vc(rng);
    bool oracle = testing::cycle_oracle_consistent(g.p, g.n);
    VarCond vc(g.p, g.n);
    ASSERT_EQ(is_consistent(vc), oracle) << format_varcond(vc);
    if (auto v = find_violation(vc)) {
      // The reported cycle is a real path in the graph.
      ASSERT_GE(v->cycle.size(), 2u);
      ASSERT_EQ(v->cycle.front(), v->cycle.back());
      int ncount = 0;
      for (std::size_t i = 0; i + 1 < v->cycle.size(); ++i) {
        Edge e{v->cycle[i], v->cycle[i + 1]};
        bool p = vc.positive().count(e), n = vc.negative().count(e);
        ASSERT_TRUE(p || n) << v->describe();
        ncount += n;
      }
      ASSERT_LE(ncount, 1) << v->describe();
    }
    inconsistent += oracle ? 0 : 1;
  }
  EXPECT_GT(inconsistent, 100);  // the generator reaches both outcomes
  EXPECT_LT(inconsistent, 1900);
}

TEST(Property, ExtensionMonotonicity) {
  std::mt19937 rng(99);
  for (int k = 0; k < 1000; ++k) {
    auto g = testing::random_vc(rng, 6, 10);
    VarCond ext(g.p, g.n);
    if (!is_consistent(ext)) continue;
    EdgeSet p, n;
    for (const Edge& e : g.p)
      if (rng() % 2) p.insert(e);
    for (const Edge& e : g.n)
      if (rng() % 2) n.insert(e);
    VarCond base(p, n);
    ASSERT_TRUE(is_weak_extension(base, ext));
    ASSERT_TRUE(is_consistent(base)) << format_varcond(base);
  }
}

TEST(Property, SigmaUpdateNeverRemovesAndComposes) {
  std::mt19937 rng(5);
  for (int k = 0; k < 500; ++k) {
    auto g = testing::random_vc(rng, 6, 8);
    VarCond vc(g.p, g.n);
    auto pick_var = [&] { return V("v" + std::to_string(rng() % 3)); };
    auto pick_term = [&]() -> Expr {
      switch (rng() % 3) {
        case 0: return Expr::sym(pick_var());
        case 1: return testing::atom("a" + std::to_string(3 + rng() % 3));
        default: return Expr::app(testing::fun_sym("G", 2), {Expr::sym(pick_var()), testing::cst("C")});
      }
    };
    Substitution s1 = Substitution::make({{pick_var(), pick_term()}});
    Substitution s2 = Substitution::make({{pick_var(), pick_term()}});
    VarCond r1 = sigma_update(vc, s1);
    for (const Edge& e : vc.positive()) ASSERT_TRUE(r1.positive().count(e));
    ASSERT_EQ(r1.negative(), vc.negative());
    VarCond twice = sigma_update(r1, s2);
    EdgeSet d = dependence(s1);
    EdgeSet d2 = dependence(s2);
    d.insert(d2.begin(), d2.end());
    ASSERT_EQ(twice, vc.with_positive(d));
  }
}

}  // namespace
}  // namespace epsk
