// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "epsilon.hpp"
#include "error.hpp"
#include "golden.hpp"
#include "parser.hpp"
#include "support.hpp"

namespace epsk {
namespace {

Symbol V(const std::string& n) { return Symbol::var(n); }

class Eps : public ::testing::Test {
 protected:
  Signature sig;
  Expr f(const std::string& s) { return parse_formula(s, sig); }
  ChoiceCondition cc(const std::string& s) { return parse_cc(s, sig); }
};

bool eps_free(const Expr& e) {
  if (e.kind() == Kind::Eps) return false;
  for (const Expr& c : e.kids())
    if (!eps_free(c)) return false;
  return true;
}

// Prefix over P(x1, ..., xn); `pattern` bit k set means the k-th quantifier is
// universal.
std::string prefix_formula(std::size_t n, unsigned pattern) {
  std::string s, args;
  for (std::size_t k = 0; k < n; ++k) {
    std::string x = "x" + std::to_string(k + 1);
    s += ((pattern >> k) & 1u ? "all " : "ex ") + x + ". ";
    args += (k ? ", " : "") + x;
  }
  return s + "P(" + args + ")";
}

std::vector<std::string> prefix_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t k = 0; k < n; ++k) v.push_back("x" + std::to_string(k + 1));
  return v;
}

// Shape of each argument of the final atom, from the recurrence alone.
std::vector<testing::Shape> argument_shapes(const std::vector<std::string>& names) {
  auto [whole, made] = testing::qelim_shapes(names);
  std::size_t n = names.size();
  std::vector<testing::Shape> out;
  for (std::size_t k = 0; k < n; ++k) {
    testing::Shape s;
    s.occ[names[k]] = {1, 0};
    for (std::size_t j = n; j-- > 0;) s = testing::subst_shape(s, names[j], made[n - 1 - j]);
    out.push_back(s);
  }
  return out;
}

TEST_F(Eps, SharedModeIdentifiesAlphaEqualTerms) {
  ProofState st = make_state({});
  auto [g, out] = eliminate(f("P(eps x. Q(x)) & R(eps y. Q(y), ?u)"), st);
  EXPECT_TRUE(eps_free(g));
  ASSERT_EQ(out.cc.size(), 1u);
  Symbol z = out.cc.entries().begin()->first;
  EXPECT_TRUE(alpha_equal(g, f("P(?" + z.name + ") & R(?" + z.name + ", ?u)")));
  EXPECT_TRUE(out.vc.positive().empty());
  EXPECT_TRUE(check_cc(out.cc, out.vc));
}

TEST_F(Eps, FreshModeSeparatesOccurrences) {
  ProofState st = make_state({});
  auto [g, out] = eliminate_fresh(f("~(eps x. true = eps x. true)"), st);
  ASSERT_EQ(out.cc.size(), 2u);
  auto it = out.cc.entries().begin();
  Symbol a = it->first;
  const CCEntry& ea = it->second;
  ++it;
  Symbol b = it->first;
  EXPECT_NE(a, b);
  EXPECT_TRUE(alpha_equal(ea, it->second));
  EXPECT_TRUE(alpha_equal(g, f("~(?" + a.name + " = ?" + b.name + ")")) ||
              alpha_equal(g, f("~(?" + b.name + " = ?" + a.name + ")")));
  auto [g2, shared] = eliminate(f("~(eps x. true = eps x. true)"), st);
  ASSERT_EQ(shared.cc.size(), 1u);
  Symbol c = shared.cc.entries().begin()->first;
  EXPECT_TRUE(alpha_equal(g2, f("~(?" + c.name + " = ?" + c.name + ")")));
}

TEST_F(Eps, PositiveEdgesFromBodies) {
  auto [g, out] = eliminate(f("P(eps x. R(x, ?y, !a))"), make_state({}));
  Symbol z = out.cc.entries().begin()->first;
  EXPECT_EQ(out.vc.positive(), (EdgeSet{{V("y"), z}, {Symbol::atom("a"), z}}));
  EXPECT_TRUE(alpha_equal(g, f("P(?" + z.name + ")")));
}

TEST_F(Eps, SubordinateTermGetsLambdaPrefix) {
  auto [g, out] = eliminate(f("all u. P(eps v. R(u, v))"), make_state({}));
  ASSERT_EQ(out.cc.size(), 1u);
  const auto& [z, e] = *out.cc.entries().begin();
  EXPECT_EQ(z.sort, Sort::curried(1));
  ASSERT_EQ(e.lambda_prefix.size(), 1u);
  EXPECT_EQ(format_entry(z, e), "?" + z.name + " := \\u. eps v. R(u, v)");
  EXPECT_TRUE(alpha_equal(g, f("all u. P(?" + z.name + "(u))")));
  EXPECT_TRUE(alpha_equal(reconstruct(g, out.cc), f("all u. P(eps v. R(u, v))")));
}

TEST_F(Eps, NestedTermsInnermostFirst) {
  auto [g, out] = eliminate(f("P(eps x. R(x, eps y. Q(y)))"), make_state({}));
  ASSERT_EQ(out.cc.size(), 2u);
  EXPECT_EQ(out.vc.positive().size(), 1u);
  EXPECT_TRUE(check_cc(out.cc, out.vc));
  EXPECT_TRUE(alpha_equal(reconstruct(g, out.cc), f("P(eps x. R(x, eps y. Q(y)))")));
}

TEST_F(Eps, ReconstructUnitEntry) {
  ChoiceCondition c = cc(testing::read_data("unit.cc"));
  EXPECT_TRUE(alpha_equal(reconstruct(f("?x = ?x"), c), f("(eps x. true) = eps x. true")));
  EXPECT_TRUE(alpha_equal(reconstruct(f("P(?q)"), c), f("P(?q)")));
  ChoiceCondition vicious = cc("?x := eps x. (x = ?y)\n?y := eps y. ~(?x = y)\n");
  EXPECT_THROW(reconstruct(f("?x = ?y"), vicious), Error);
}

TEST_F(Eps, QelimSingleQuantifier) {
  EXPECT_TRUE(alpha_equal(qelim(f("ex x. P(x)")), f("P(eps x. P(x))")));
  EXPECT_TRUE(alpha_equal(qelim(f("all x. P(x)")), f("P(eps x. ~P(x))")));
  QelimResult r = qelim_stats(f("ex x. P(x)"));
  EXPECT_EQ(r.depth, 1u);
  EXPECT_EQ(r.binders, 1u);
  EXPECT_THROW(qelim(f("P(eps x. Q(x))")), Error);
  EXPECT_TRUE(alpha_equal(qelim(f("P(C) & ~Q(D)")), f("P(C) & ~Q(D)")));
}

TEST_F(Eps, QelimTableMatchesPublishedRows) {
  QelimResult r = qelim_stats(f("ex w. all x. ex y. all z. P(w, x, y, z)"));
  EXPECT_EQ(r.depth, 15u);
  EXPECT_EQ(r.binders, 1805u);
  ASSERT_EQ(r.subterms.size(), 4u);
  std::vector<std::tuple<std::string, std::size_t, std::uint64_t>> args = {
      {"w_a", 8, 42}, {"x_b", 12, 258}, {"y_d", 14, 602}, {"z_h", 15, 903}};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(r.subterms[k].name, std::get<0>(args[k]));
    EXPECT_EQ(r.subterms[k].depth, std::get<1>(args[k]));
    EXPECT_EQ(r.subterms[k].binders, std::get<2>(args[k]));
  }
  std::vector<std::tuple<std::string, std::size_t, std::uint64_t>> rows = {
      {"z_a", 1, 1},    {"y_a", 2, 2},    {"z_b", 3, 3},     {"x_a", 4, 6},    {"z_c", 5, 7},
      {"y_b", 6, 14},   {"z_d", 7, 21},   {"w_a", 8, 42},    {"z_e", 9, 43},   {"y_c", 10, 86},
      {"z_f", 11, 129}, {"x_b", 12, 258}, {"z_g", 13, 301},  {"y_d", 14, 602}, {"z_h", 15, 903}};
  ASSERT_TRUE(r.table_complete);
  ASSERT_EQ(r.table.size(), rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(r.table[k].name, std::get<0>(rows[k]));
    EXPECT_EQ(r.table[k].depth, std::get<1>(rows[k]));
    EXPECT_EQ(r.table[k].binders, std::get<2>(rows[k]));
  }
}

TEST(Qelim, DepthAndBindersFollowRecurrence) {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto names = prefix_names(n);
    auto [whole, made] = testing::qelim_shapes(names);
    std::vector<testing::Shape> argsh = argument_shapes(names);
    EXPECT_EQ(whole.depth, (std::size_t{1} << n) - 1);
    for (unsigned pattern = 0; pattern < (1u << n); ++pattern) {
      Signature sig;
      QelimResult r = qelim_stats(parse_formula(prefix_formula(n, pattern), sig));
      ASSERT_EQ(r.depth, whole.depth) << prefix_formula(n, pattern);
      ASSERT_EQ(r.binders, whole.binders) << prefix_formula(n, pattern);
      ASSERT_EQ(r.subterms.size(), n);
      for (std::size_t k = 0; k < n; ++k) {
        EXPECT_EQ(r.subterms[k].depth, argsh[k].depth);
        EXPECT_EQ(r.subterms[k].binders, argsh[k].binders);
      }
    }
  }
}

TEST(Qelim, LargerPrefixStaysCheap) {
  Signature sig;
  QelimResult r = qelim_stats(parse_formula(prefix_formula(6, 0b101010), sig), 1000);
  auto [whole, made] = testing::qelim_shapes(prefix_names(6));
  EXPECT_EQ(r.depth, 63u);
  EXPECT_EQ(r.binders, whole.binders);
  EXPECT_FALSE(r.table_complete);
}

TEST_F(Eps, ParallelUniversalBlock) {
  Expr g = qelim_parallel(f("all w. all x. all y. all z. P(w, x, y, z)"));
  std::string v = "eps v. ~P(Proj1(v), Proj2(v), Proj3(v), Proj4(v))";
  Expr want = f("P(Proj1(" + v + "), Proj2(" + v + "), Proj3(" + v + "), Proj4(" + v + "))");
  EXPECT_TRUE(alpha_equal(g, want)) << to_string(g);
  EXPECT_EQ(eps_depth(g), 1u);
}

TEST_F(Eps, ParallelExistentialPairAndSingleton) {
  Expr g = qelim_parallel(f("ex x. ex y. R(x, y)"));
  std::string v = "eps v. R(Proj1(v), Proj2(v))";
  EXPECT_TRUE(alpha_equal(g, f("R(Proj1(" + v + "), Proj2(" + v + "))"))) << to_string(g);
  EXPECT_TRUE(alpha_equal(qelim_parallel(f("all x. P(x)")), qelim(f("all x. P(x)"))));
  EXPECT_TRUE(alpha_equal(qelim_parallel(f("ex x. P(x)")), qelim(f("ex x. P(x)"))));
  EXPECT_EQ(projection(3).sort, Sort::curried(1));
}

TEST_F(Eps, GoldenChoiceConditionForSubordinateExample) {
  Expr q = qelim(f("ex w. all x. ex y. all z. P(w, x, y, z)"));
  auto [g, out] = eliminate(q, make_state({}));
  ChoiceCondition golden = cc(testing::read_data("subordinate.cc"));
  ASSERT_EQ(golden.size(), 15u);
  ASSERT_EQ(out.cc.size(), 15u);
  auto m = testing::match_cc(golden, out.cc);
  ASSERT_TRUE(m) << dump(out.cc);
  auto img = [&](const char* n) { return Expr::sym(m->at(V(n))); };
  EXPECT_TRUE(alpha_equal(g, Expr::pred(testing::pred_sym("P", 4),
                                        {img("wa"), img("xb"), img("yd"), img("zh")})));
  std::vector<std::string> chain = {"za", "ya", "zb", "xa", "zc", "yb", "zd", "wa",
                                    "ze", "yc", "zf", "xb", "zg", "yd", "zh"};
  for (std::size_t k = 0; k + 1 < chain.size(); ++k)
    EXPECT_TRUE(out.vc.positive().count({m->at(V(chain[k])), m->at(V(chain[k + 1]))}))
        << chain[k] << " -> " << chain[k + 1];
  EXPECT_TRUE(check_cc(out.cc, out.vc));
  EXPECT_TRUE(alpha_equal(reconstruct(g, out.cc), q));
}

// ---- properties ------------------------------------------------------------

TEST(Property, EliminateReconstructRoundTrip) {
  testing::Gen gen(11);
  int with_eps = 0;
  for (int k = 0; k < 20000 && with_eps < 500; ++k) {
    Expr f = gen.formula(3);
    if (eps_free(f)) continue;
    auto [g, st] = eliminate(f, make_state({}));
    ASSERT_TRUE(eps_free(g)) << to_string(f);
    ASSERT_TRUE(check_cc(st.cc, st.vc)) << to_string(f);
    ASSERT_TRUE(alpha_equal(reconstruct(g, st.cc), f)) << to_string(f) << "\n" << to_string(g);
    auto [g2, st2] = eliminate_fresh(f, make_state({}));
    ASSERT_TRUE(eps_free(g2));
    ASSERT_GE(st2.cc.size(), st.cc.size());
    ASSERT_TRUE(alpha_equal(reconstruct(g2, st2.cc), f)) << to_string(f);
    ++with_eps;
  }
  EXPECT_EQ(with_eps, 500);
}

TEST(Property, QelimIntroducesNoSymbols) {
  testing::Vocab v;
  v.eps = false;
  v.vars.clear();
  v.atoms.clear();
  testing::Gen gen(12, v);
  for (int k = 0; k < 500; ++k) {
    Expr f = gen.formula(3);
    if (!free_symbols(f, kBoundAtoms).empty()) continue;
    Expr q = qelim(f);
    ASSERT_TRUE(free_symbols(q, kBoundAtoms | kFreeSymbols).empty()) << to_string(f);
    ASSERT_EQ(constants(q), constants(f)) << to_string(f);
    ASSERT_LE(eps_depth(q), (std::size_t{1} << 3) - 1);
  }
}

}  // namespace
}  // namespace epsk
