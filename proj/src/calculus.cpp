// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "calculus.hpp"

#include <algorithm>
#include <cctype>

namespace epsk {

namespace {

std::string id_str(GoalId g) { return std::to_string(g); }

void check_invariant(const ProofState& st, const char* rule) {
  CCCheck c = check_cc(st.cc, st.vc);
  if (!c)
    throw Error(ErrorKind::Internal, std::string(rule) + " broke the choice condition: " +
                                         c.message);
}

const Expr& principal(const Sequent& s, std::size_t idx, GoalId g) {
  if (idx >= s.formulas.size())
    throw Error(ErrorKind::Rule, "goal " + id_str(g) + " has no formula " + std::to_string(idx));
  return s.formulas[idx];
}

Sequent without(const Sequent& s, std::size_t idx) {
  Sequent out;
  for (std::size_t k = 0; k < s.formulas.size(); ++k)
    if (k != idx) out.formulas.push_back(s.formulas[k]);
  return out;
}

Sequent prepend(std::vector<Expr> front, const Sequent& rest) {
  Sequent out;
  out.formulas = std::move(front);
  out.formulas.insert(out.formulas.end(), rest.formulas.begin(), rest.formulas.end());
  return out;
}

std::string stem(const std::string& base) {
  std::string s = base;
  while (!s.empty() && (std::isdigit(static_cast<unsigned char>(s.back())) || s.back() == '_'))
    s.pop_back();
  return s.empty() ? "v" : s;
}

// Binder and body of (Q x. A) or ~(Q' x. A) for the requested quantifier.
struct Quant {
  Symbol var;
  Expr body;
  bool negated;
};

std::optional<Quant> match(const Expr& f, Kind plain, Kind under_not) {
  if (f.kind() == plain) return Quant{f.symbol(), f.body(), false};
  if (f.kind() == Kind::Not && f.kid(0).kind() == under_not)
    return Quant{f.kid(0).symbol(), f.kid(0).body(), true};
  return std::nullopt;
}

}  // namespace

void register_symbols(ProofState& st, const Expr& e) {
  for (const Symbol& s : e.free())
    if (s.is_free() && !st.known.count(s)) st.known.insert(s);
}

std::optional<Symbol> lookup(const ProofState& st, const Symbol& s) {
  auto it = st.known.find(s);
  if (it == st.known.end()) return std::nullopt;
  return *it;
}

Symbol mint(ProofState& st, SymbolClass cls, const std::string& base, const Sort& sort,
            bool numbered) {
  std::string s = stem(base);
  if (!numbered && !st.known.count(Symbol::var(s)) && !st.known.count(Symbol::atom(s))) {
    Symbol out{cls, s, sort};
    st.known.insert(out);
    return out;
  }
  while (true) {
    std::string name = s + std::to_string(st.fresh_counter++);
    if (st.known.count(Symbol::var(name)) || st.known.count(Symbol::atom(name))) continue;
    Symbol out{cls, name, sort};
    st.known.insert(out);
    return out;
  }
}

ProofState make_state(const std::vector<Sequent>& goals) {
  ProofState st;
  for (const Sequent& s : goals) st = add_goal(st, s);
  return st;
}

ProofState add_goal(const ProofState& st0, const Sequent& s, GoalId* id) {
  ProofState st = st0;
  for (const Expr& f : s.formulas) {
    if (!f.is_formula()) throw Error(ErrorKind::Sort, "goal entries must be formulas");
    check_no_free_bound(f, "goal");
    register_symbols(st, f);
  }
  GoalId g = st.next_goal++;
  st.goals.emplace(g, s);
  if (id) *id = g;
  return st;
}

ProofState add_axiom(const ProofState& st0, const Expr& f) {
  if (!f.is_formula()) throw Error(ErrorKind::Sort, "axioms must be formulas");
  check_no_free_bound(f, "axiom");
  ProofState st = st0;
  register_symbols(st, f);
  st.axioms.push_back(f);
  return st;
}

const Sequent& goal(const ProofState& st, GoalId g) {
  auto it = st.goals.find(g);
  if (it == st.goals.end()) throw Error(ErrorKind::Rule, "no open goal " + id_str(g));
  return it->second;
}

ProofState gamma(const ProofState& st0, GoalId g, std::size_t idx, const Expr& t) {
  const Sequent& s = goal(st0, g);
  const Expr& f = principal(s, idx, g);
  auto q = match(f, Kind::Exists, Kind::Forall);
  if (!q) throw Error(ErrorKind::Rule, "gamma needs ex y. A or ~all y. A, got " + to_string(f));
  if (!t || !t.is_term()) throw Error(ErrorKind::Sort, "gamma needs a term");
  check_no_free_bound(t, "gamma term");
  if (sort_of(t) != q->var.sort)
    throw Error(ErrorKind::Sort, "gamma term " + to_string(t) + " has sort " +
                                     sort_of(t).str() + ", expected " + q->var.sort.str());
  Expr side = instantiate(q->body, q->var, t, Renaming::AvoidShadowing);
  if (q->negated) side = Expr::neg(side);
  ProofState st = st0;
  register_symbols(st, t);
  st.goals[g] = prepend({side}, s);
  st.trace.push_back("gamma " + id_str(g) + " " + std::to_string(idx) + " " + to_string(t));
  return st;
}

ProofState delta_minus(const ProofState& st0, GoalId g, std::size_t idx) {
  const Sequent& s = goal(st0, g);
  const Expr& f = principal(s, idx, g);
  auto q = match(f, Kind::Forall, Kind::Exists);
  if (!q) throw Error(ErrorKind::Rule, "delta- needs all x. A or ~ex x. A, got " + to_string(f));
  ProofState st = st0;
  Symbol a = mint(st, SymbolClass::FreeAtom, q->var.name, q->var.sort);
  Expr side = instantiate(q->body, q->var, Expr::sym(a), Renaming::AvoidShadowing);
  if (q->negated) side = Expr::neg(side);
  EdgeSet n;
  for (const Symbol& x : free_symbols(s, kFreeVars)) n.emplace(x, a);
  st.vc = st.vc.with_negative(n);
  st.goals[g] = prepend({side}, without(s, idx));
  st.trace.push_back("delta- " + id_str(g) + " " + std::to_string(idx) + " => " + a.str());
  check_invariant(st, "delta-");
  return st;
}

ProofState delta_plus(const ProofState& st0, GoalId g, std::size_t idx) {
  const Sequent& s = goal(st0, g);
  const Expr& f = principal(s, idx, g);
  auto q = match(f, Kind::Forall, Kind::Exists);
  if (!q) throw Error(ErrorKind::Rule, "delta+ needs all x. A or ~ex x. A, got " + to_string(f));
  ProofState st = st0;
  Symbol x = mint(st, SymbolClass::FreeVar, q->var.name, q->var.sort);
  Expr side = instantiate(q->body, q->var, Expr::sym(x), Renaming::AvoidShadowing);
  if (q->negated) side = Expr::neg(side);
  CCEntry e{{}, q->var, q->negated ? q->body : Expr::neg(q->body)};
  EdgeSet p;
  for (const Symbol& z : f.free())
    if (z.is_free()) p.emplace(z, x);
  st.vc = st.vc.with_positive(p);
  st.cc = st.cc.with(x, std::move(e));
  st.goals[g] = prepend({side}, without(s, idx));
  st.trace.push_back("delta+ " + id_str(g) + " " + std::to_string(idx) + " => " + x.str());
  check_invariant(st, "delta+");
  return st;
}

ProofState alpha_beta(const ProofState& st0, GoalId g, std::size_t idx, Split expect) {
  const Sequent& s = goal(st0, g);
  const Expr& f = principal(s, idx, g);
  std::vector<Expr> one;
  std::vector<Expr> left, right;
  bool beta = false;
  auto neg = [](const Expr& e) { return Expr::neg(e); };
  switch (f.kind()) {
    case Kind::Or: one = {f.kid(0), f.kid(1)}; break;
    case Kind::Implies: one = {neg(f.kid(0)), f.kid(1)}; break;
    case Kind::And:
      beta = true;
      left = {f.kid(0)};
      right = {f.kid(1)};
      break;
    case Kind::Iff:
      beta = true;
      left = {neg(f.kid(0)), f.kid(1)};
      right = {f.kid(0), neg(f.kid(1))};
      break;
    case Kind::Not: {
      const Expr& a = f.kid(0);
      switch (a.kind()) {
        case Kind::Not: one = {a.kid(0)}; break;
        case Kind::And: one = {neg(a.kid(0)), neg(a.kid(1))}; break;
        case Kind::True: one = {}; break;
        case Kind::Or:
          beta = true;
          left = {neg(a.kid(0))};
          right = {neg(a.kid(1))};
          break;
        case Kind::Implies:
          beta = true;
          left = {a.kid(0)};
          right = {neg(a.kid(1))};
          break;
        case Kind::Iff:
          beta = true;
          left = {a.kid(0), a.kid(1)};
          right = {neg(a.kid(0)), neg(a.kid(1))};
          break;
        default:
          throw Error(ErrorKind::Rule, "no alpha/beta rule for " + to_string(f));
      }
      break;
    }
    case Kind::False: one = {}; break;
    default:
      throw Error(ErrorKind::Rule, "no alpha/beta rule for " + to_string(f));
  }
  if (expect == Split::Alpha && beta)
    throw Error(ErrorKind::Rule, to_string(f) + " is a beta formula");
  if (expect == Split::Beta && !beta)
    throw Error(ErrorKind::Rule, to_string(f) + " is an alpha formula");
  ProofState st = st0;
  Sequent rest = without(s, idx);
  std::string what = beta ? "beta " : "alpha ";
  if (!beta) {
    st.goals[g] = prepend(std::move(one), rest);
    st.trace.push_back(what + id_str(g) + " " + std::to_string(idx));
  } else {
    GoalId g2 = st.next_goal++;
    st.goals[g] = prepend(std::move(left), rest);
    st.goals[g2] = prepend(std::move(right), rest);
    st.trace.push_back(what + id_str(g) + " " + std::to_string(idx) + " => " + id_str(g) +
                       ", " + id_str(g2));
  }
  return st;
}

bool closable(const ProofState& st, GoalId g) {
  const Sequent& s = goal(st, g);
  for (const Expr& f : s.formulas) {
    if (f.kind() == Kind::True) return true;
    if (f.kind() == Kind::Not && f.kid(0).kind() == Kind::False) return true;
    if (f.kind() == Kind::Eq && alpha_equal(f.kid(0), f.kid(1))) return true;
    if (f.kind() == Kind::Not)
      for (const Expr& h : s.formulas)
        if (alpha_equal(f.kid(0), h)) return true;
    for (const Expr& ax : st.axioms)
      if (alpha_equal(f, ax)) return true;
  }
  return false;
}

ProofState close(const ProofState& st0, GoalId g) {
  if (!closable(st0, g))
    throw Error(ErrorKind::Rule, "goal " + id_str(g) + " is not an axiom: " +
                                     to_string(goal(st0, g)));
  ProofState st = st0;
  st.goals.erase(g);
  st.closed.push_back(g);
  st.trace.push_back("close " + id_str(g));
  return st;
}

Obligations obligations(const ProofState& st, const Substitution& s) {
  Obligations ob;
  for (const Symbol& x : s.domain())
    if (st.cc.contains(x)) ob.m.insert(x);
  SymbolSet goal_vars;
  for (const auto& [id, q] : st.goals) {
    SymbolSet v = free_symbols(q, kFreeVars);
    goal_vars.insert(v.begin(), v.end());
  }
  SymbolSet reach = reaching(st.vc.positive(), goal_vars);
  SymbolSet rest;
  for (const Symbol& y : ob.m) {
    if (reach.count(y))
      ob.o.insert(y);
    else
      rest.insert(y);
  }
  SymbolSet down = reachable_plus(st.vc.positive(), rest);
  down.insert(rest.begin(), rest.end());
  for (const Symbol& y : down)
    if (st.cc.contains(y)) ob.o_prime.insert(y);
  return ob;
}

ProofState instantiate_vars(const ProofState& st0, const Substitution& s) {
  if (!s.empty() && !s.over_vars())
    throw Error(ErrorKind::Substitution, "global instantiation needs free variables");
  if (auto v = find_violation(sigma_update(st0.vc, s)))
    throw Error(ErrorKind::Substitution, "not a (P,N)-substitution: " + v->describe());
  Obligations ob = obligations(st0, s);
  SymbolSet goal_vars;
  for (const auto& [id, q] : st0.goals) {
    SymbolSet v = free_symbols(q, kFreeVars);
    goal_vars.insert(v.begin(), v.end());
  }
  for (const Symbol& y : ob.o_prime)
    if (ob.o.count(y) || goal_vars.count(y))
      throw Error(ErrorKind::Internal, "skipped choice variable " + y.str() +
                                           " is connected to an open goal");
  ProofState st = st0;
  for (auto& [id, q] : st.goals) q = apply_subst(q, s);
  std::vector<Expr> qs;
  for (const Symbol& y : ob.o) qs.push_back(apply_subst(q_formula(st0.cc, y), s));
  auto [cc2, vc2] = extended_sigma_update(st0.cc, st0.vc, s);
  st.cc = cc2;
  st.vc = vc2;
  for (const auto& [x, t] : s.bindings()) register_symbols(st, t);
  std::string line = "subst";
  for (const auto& [x, t] : s.bindings()) line += " " + x.str() + " := " + to_string(t);
  std::vector<GoalId> fresh;
  for (const Expr& f : qs) {
    GoalId g;
    st = add_goal(st, Sequent{{f}}, &g);
    fresh.push_back(g);
  }
  if (!fresh.empty()) {
    line += " => obligations";
    for (GoalId g : fresh) line += " " + id_str(g);
  }
  st.trace.push_back(line);
  check_invariant(st, "subst");
  return st;
}

ProofState instantiate_atoms(const ProofState& st0, GoalId g, const Substitution& nu) {
  if (!nu.empty() && !nu.over_atoms())
    throw Error(ErrorKind::Substitution, "local instantiation needs free atoms");
  const Sequent& s = goal(st0, g);
  for (const Symbol& x : free_symbols(s, kFreeVars))
    for (const Symbol& a : nu.domain())
      if (!st0.vc.negative().count({x, a}))
        throw Error(ErrorKind::Substitution, "missing N edge (" + x.str() + ", " + a.str() +
                                                 ") for instantiating " + a.str() +
                                                 " in goal " + id_str(g));
  ProofState st = st0;
  st.goals[g] = apply_subst(s, nu);
  for (const auto& [a, t] : nu.bindings()) register_symbols(st, t);
  std::string line = "asubst " + id_str(g);
  for (const auto& [a, t] : nu.bindings()) line += " " + a.str() + " := " + to_string(t);
  st.trace.push_back(line);
  return st;
}

ProofState extend_vc(const ProofState& st0, const EdgeSet& p, const EdgeSet& n) {
  ProofState st = st0;
  st.vc = st.vc.with_positive(p).with_negative(n);
  if (auto v = find_violation(st.vc))
    throw Error(ErrorKind::Substitution, "variable condition would become inconsistent: " +
                                             v->describe());
  for (const Edge& e : p) {
    st.known.insert(e.first);
    st.known.insert(e.second);
  }
  for (const Edge& e : n) {
    st.known.insert(e.first);
    st.known.insert(e.second);
  }
  return st;
}

}  // namespace epsk
