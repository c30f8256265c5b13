// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

// Generators and independent oracles shared by the unit and acceptance tests.
// Nothing here calls into the code under test for the answer it checks.

#ifndef EPSK_TESTS_SUPPORT_HPP_
#define EPSK_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "syntax.hpp"
#include "varcond.hpp"

namespace epsk::testing {

inline Symbol pred_sym(const std::string& n, std::size_t k) {
  return Symbol::constant(n, Sort::relation(k));
}
inline Symbol fun_sym(const std::string& n, std::size_t k) {
  return Symbol::constant(n, Sort::curried(k));
}
inline Expr var(const std::string& n) { return Expr::sym(Symbol::var(n)); }
inline Expr atom(const std::string& n) { return Expr::sym(Symbol::atom(n)); }
inline Expr bnd(const std::string& n) { return Expr::sym(Symbol::bound(n)); }
inline Expr cst(const std::string& n) { return Expr::sym(fun_sym(n, 0)); }

// ---- random formulas -------------------------------------------------------

struct Vocab {
  std::vector<std::string> vars = {"x", "y"};
  std::vector<std::string> atoms = {"a", "b"};
  std::vector<std::string> consts = {"C", "D"};
  std::vector<std::string> binders = {"u", "v", "w"};
  bool unary_fun = true;   // F/1
  bool eps = true;         // eps terms
  bool binary_pred = true; // R/2 next to P/1
};

class Gen {
 public:
  explicit Gen(std::uint32_t seed, Vocab v = {}) : rng_(seed), v_(std::move(v)) {}

  std::mt19937& rng() { return rng_; }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin(int percent) { return pick(100) < percent; }

  Expr term(int depth, std::vector<std::string>& scope) {
    int choice = pick(depth > 0 ? 6 : 4);
    switch (choice) {
      case 0:
        if (!scope.empty()) return bnd(scope[pick(static_cast<int>(scope.size()))]);
        [[fallthrough]];
      case 1:
        if (!v_.vars.empty()) return var(v_.vars[pick(static_cast<int>(v_.vars.size()))]);
        [[fallthrough]];
      case 2:
        if (!v_.atoms.empty()) return atom(v_.atoms[pick(static_cast<int>(v_.atoms.size()))]);
        [[fallthrough]];
      case 3: return cst(v_.consts[pick(static_cast<int>(v_.consts.size()))]);
      case 4:
        if (v_.unary_fun) return Expr::app(fun_sym("F", 1), {term(depth - 1, scope)});
        return term(0, scope);
      default: {
        if (!v_.eps) return term(0, scope);
        std::string b = v_.binders[pick(static_cast<int>(v_.binders.size()))];
        scope.push_back(b);
        Expr body = formula(depth - 1, scope);
        scope.pop_back();
        return Expr::eps(Symbol::bound(b), body);
      }
    }
  }

  Expr atomic(int depth, std::vector<std::string>& scope) {
    int k = pick(v_.binary_pred ? 4 : 3);
    int td = std::max(0, depth - 1);
    if (k == 0) return Expr::pred(pred_sym("P", 1), {term(td, scope)});
    if (k == 1) return Expr::eq(term(td, scope), term(td, scope));
    if (k == 2) return coin(50) ? Expr::top() : Expr::bottom();
    return Expr::pred(pred_sym("R", 2), {term(td, scope), term(td, scope)});
  }

  Expr formula(int depth, std::vector<std::string>& scope) {
    if (depth <= 0) return atomic(0, scope);
    int k = pick(9);
    switch (k) {
      case 0: return atomic(depth, scope);
      case 1: return Expr::neg(formula(depth - 1, scope));
      case 2: return Expr::conj(formula(depth - 1, scope), formula(depth - 1, scope));
      case 3: return Expr::disj(formula(depth - 1, scope), formula(depth - 1, scope));
      case 4: return Expr::implies(formula(depth - 1, scope), formula(depth - 1, scope));
      case 5: return Expr::iff(formula(depth - 1, scope), formula(depth - 1, scope));
      default: {
        std::string b = v_.binders[pick(static_cast<int>(v_.binders.size()))];
        scope.push_back(b);
        Expr body = formula(depth - 1, scope);
        scope.pop_back();
        return k == 6 ? Expr::forall(Symbol::bound(b), body) : Expr::exists(Symbol::bound(b), body);
      }
    }
  }

  Expr formula(int depth) {
    std::vector<std::string> scope;
    return formula(depth, scope);
  }
  Expr closed_term(int depth) {
    std::vector<std::string> scope;
    return term(depth, scope);
  }

 private:
  std::mt19937 rng_;
  Vocab v_;
};

// ---- consistency oracle ----------------------------------------------------

// Enumerates every simple cycle of P + N (as a plain digraph) and reports
// whether one of them uses at most one N edge.
inline bool cycle_oracle_consistent(const EdgeSet& p, const EdgeSet& n) {
  std::map<Symbol, std::vector<std::pair<Symbol, int>>> adj;  // weight 1 for N
  std::set<Symbol> nodes;
  for (const auto& [a, b] : p) {
    adj[a].push_back({b, 0});
    nodes.insert(a);
    nodes.insert(b);
  }
  for (const auto& [a, b] : n) {
    adj[a].push_back({b, 1});
    nodes.insert(a);
    nodes.insert(b);
  }
  std::vector<Symbol> order(nodes.begin(), nodes.end());
  bool bad = false;
  // Cycles are rooted at their least node to visit each once.
  for (std::size_t s = 0; s < order.size() && !bad; ++s) {
    const Symbol& root = order[s];
    std::set<Symbol> on_path{root};
    std::function<void(const Symbol&, int)> dfs = [&](const Symbol& u, int ncount) {
      if (bad) return;
      for (const auto& [w, weight] : adj[u]) {
        if (w < root) continue;
        int c = ncount + weight;
        if (w == root) {
          if (c <= 1) bad = true;
          continue;
        }
        if (on_path.count(w)) continue;
        on_path.insert(w);
        dfs(w, c);
        on_path.erase(w);
      }
    };
    dfs(root, 0);
  }
  return !bad;
}

struct RandomVc {
  EdgeSet p, n;
};

// Up to `max_nodes` symbols split into variables and atoms, up to `max_edges`
// edges respecting the P/N class discipline.
inline RandomVc random_vc(std::mt19937& rng, int max_nodes = 8, int max_edges = 12) {
  std::uniform_int_distribution<int> nn(2, max_nodes);
  int total = nn(rng);
  int nvars = std::uniform_int_distribution<int>(1, total)(rng);
  std::vector<Symbol> vars, atoms;
  for (int k = 0; k < nvars; ++k) vars.push_back(Symbol::var("v" + std::to_string(k)));
  for (int k = nvars; k < total; ++k) atoms.push_back(Symbol::atom("a" + std::to_string(k)));
  int edges = std::uniform_int_distribution<int>(0, max_edges)(rng);
  RandomVc out;
  for (int e = 0; e < edges; ++e) {
    bool negative = !atoms.empty() && std::uniform_int_distribution<int>(0, 2)(rng) == 0;
    if (negative) {
      out.n.emplace(vars[rng() % vars.size()], atoms[rng() % atoms.size()]);
    } else {
      std::size_t src = rng() % (vars.size() + atoms.size());
      Symbol from = src < vars.size() ? vars[src] : atoms[src - vars.size()];
      out.p.emplace(from, vars[rng() % vars.size()]);
    }
  }
  return out;
}

// ---- quantifier elimination recurrence --------------------------------------

// Tracks, for an eps formula or term built inside-out, the number of eps
// binders, the eps nesting depth, and for each still-free quantified
// variable its number of occurrences and deepest eps level. Substitution
// A{x -> t} then has closed forms, so no term tree is built.
struct Shape {
  std::uint64_t binders = 0;
  std::size_t depth = 0;
  std::map<std::string, std::pair<std::uint64_t, std::size_t>> occ;  // name -> (count, level)
};

inline Shape subst_shape(const Shape& a, const std::string& x, const Shape& t) {
  auto it = a.occ.find(x);
  if (it == a.occ.end()) return a;
  auto [cnt, lvl] = it->second;
  Shape r;
  r.binders = a.binders + cnt * t.binders;
  r.depth = std::max(a.depth, lvl + t.depth);
  r.occ = a.occ;
  r.occ.erase(x);
  for (const auto& [v, ol] : t.occ) {
    auto& slot = r.occ[v];
    slot.first += cnt * ol.first;
    slot.second = std::max(slot.second, lvl + ol.second);
  }
  return r;
}

inline Shape eps_shape(const std::string& bound, const Shape& body) {
  Shape r;
  r.binders = body.binders + 1;
  r.depth = body.depth + 1;
  for (const auto& [v, ol] : body.occ)
    if (v != bound) r.occ[v] = {ol.first, ol.second + 1};
  return r;
}

// Quantifier prefix over the atom P(x1, ..., xn); returns the shape of the
// result and of each eps term introduced, innermost first.
inline std::pair<Shape, std::vector<Shape>> qelim_shapes(const std::vector<std::string>& names) {
  Shape a;
  for (const auto& v : names) a.occ[v] = {1, 0};
  std::vector<Shape> made;
  for (std::size_t k = names.size(); k-- > 0;) {
    Shape e = eps_shape(names[k], a);
    made.push_back(e);
    a = subst_shape(a, names[k], e);
  }
  return {a, made};
}

// ---- evaluator lemmas --------------------------------------------------------

// Element names used by the substitution-based checks.
inline Expr element(int u) { return cst("E" + std::to_string(u)); }

}  // namespace epsk::testing

#endif  // EPSK_TESTS_SUPPORT_HPP_
