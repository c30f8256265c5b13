// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "choice.hpp"

#include <algorithm>
#include <sstream>

namespace epsk {

Sort CCEntry::sort() const {
  Sort s = eps_bound.sort;
  for (auto it = lambda_prefix.rbegin(); it != lambda_prefix.rend(); ++it)
    s = Sort::fun(it->sort, s);
  return s;
}

bool alpha_equal(const CCEntry& a, const CCEntry& b) {
  if (a.lambda_prefix.size() != b.lambda_prefix.size()) return false;
  return alpha_key(a.eps_term(), a.lambda_prefix) == alpha_key(b.eps_term(), b.lambda_prefix);
}

const CCEntry* ChoiceCondition::find(const Symbol& y) const {
  auto it = entries_.find(y);
  return it == entries_.end() ? nullptr : &it->second;
}

SymbolSet ChoiceCondition::domain() const {
  SymbolSet d;
  for (const auto& kv : entries_) d.insert(kv.first);
  return d;
}

ChoiceCondition ChoiceCondition::with(const Symbol& y, CCEntry e) const {
  if (!y.is_var())
    throw Error(ErrorKind::IllFormed, "choice condition key " + y.str() + " is not a free variable");
  ChoiceCondition out = *this;
  out.entries_.erase(y);
  out.entries_.emplace(y, std::move(e));
  return out;
}

ChoiceCondition ChoiceCondition::without(const SymbolSet& ys) const {
  ChoiceCondition out;
  for (const auto& [y, e] : entries_)
    if (!ys.count(y)) out.entries_.emplace(y, e);
  return out;
}

CCCheck check_cc(const ChoiceCondition& cc, const VarCond& vc) {
  if (auto v = find_violation(vc))
    return {false, 0, std::nullopt, "variable condition inconsistent: " + v->describe()};
  EdgeSet closure = transitive_closure(vc.positive());
  for (const auto& [y, e] : cc.entries()) {
    std::vector<std::string> names;
    for (const Symbol& v : e.lambda_prefix) names.push_back(v.name);
    names.push_back(e.eps_bound.name);
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return {false, 1, y, "lambda prefix and eps binder of " + y.str() + " are not distinct"};
    for (const Symbol& s : e.body.free()) {
      if (s.is_bound() && std::find(names.begin(), names.end(), s.name) == names.end())
        return {false, 1, y,
                "bound atom '" + s.name + "' in the entry for " + y.str() + " is not bound"};
    }
    if (e.sort() != y.sort)
      return {false, 2, y,
              y.str() + " has sort " + y.sort.str() + " but its entry has sort " + e.sort().str()};
    for (const Symbol& z : e.body.free()) {
      if (!z.is_free()) continue;
      if (!closure.count({z, y}))
        return {false, 3, z, z.str() + " occurs in the entry for " + y.str() + " but " +
                                 z.str() + " P+ " + y.str() + " does not hold"};
    }
  }
  return {};
}

EdgeSet cc_dependence(const ChoiceCondition& cc) {
  EdgeSet d;
  for (const auto& [y, e] : cc.entries())
    for (const Symbol& z : e.body.free())
      if (z.is_free()) d.emplace(z, y);
  return d;
}

Expr q_formula(const ChoiceCondition& cc, const Symbol& y) {
  const CCEntry* e = cc.find(y);
  if (!e) throw Error(ErrorKind::Rule, y.str() + " has no choice-condition entry");
  Symbol head = cc.entries().find(y)->first;
  std::vector<Expr> args;
  for (const Symbol& v : e->lambda_prefix) args.push_back(Expr::sym(v));
  Expr chosen = Expr::app(head, std::move(args));
  Expr f = Expr::implies(Expr::exists(e->eps_bound, e->body),
                         instantiate(e->body, e->eps_bound, chosen));
  for (auto it = e->lambda_prefix.rbegin(); it != e->lambda_prefix.rend(); ++it)
    f = Expr::forall(*it, f);
  return f;
}

std::pair<ChoiceCondition, VarCond> extended_sigma_update(const ChoiceCondition& cc,
                                                          const VarCond& vc,
                                                          const Substitution& s) {
  if (s.empty()) return {cc, vc};
  if (!s.over_vars())
    throw Error(ErrorKind::Substitution, "extended sigma-update needs free variables");
  VarCond vc2 = sigma_update(vc, s);
  if (auto v = find_violation(vc2))
    throw Error(ErrorKind::Substitution, "not a (P,N)-substitution: " + v->describe());
  ChoiceCondition out;
  for (const auto& [y, e] : cc.entries()) {
    if (s.find(y)) continue;
    CCEntry e2 = e;
    e2.body = apply_subst(e.body, s);
    out = out.with(y, std::move(e2));
  }
  return {out, vc2};
}

bool is_extended_extension(const ChoiceCondition& cc, const VarCond& vc,
                           const ChoiceCondition& cc2, const VarCond& vc2) {
  for (const auto& [y, e] : cc.entries()) {
    const CCEntry* e2 = cc2.find(y);
    if (!e2 || !alpha_equal(e, *e2)) return false;
  }
  if (!check_cc(cc, vc) || !check_cc(cc2, vc2)) return false;
  return std::includes(vc2.positive().begin(), vc2.positive().end(), vc.positive().begin(),
                       vc.positive().end()) &&
         std::includes(vc2.negative().begin(), vc2.negative().end(), vc.negative().begin(),
                       vc.negative().end());
}

std::string format_entry(const Symbol& y, const CCEntry& e) {
  std::string out = y.str() + " := ";
  for (const Symbol& v : e.lambda_prefix) out += "\\" + v.name + ". ";
  out += "eps " + e.eps_bound.name + ". " + to_string(e.body);
  return out;
}

std::string dump(const ChoiceCondition& cc) {
  std::string out;
  for (const auto& [y, e] : cc.entries()) out += format_entry(y, e) + "\n";
  return out;
}

ChoiceCondition parse_cc(const std::string& text, Signature& sig) {
  std::istringstream in(text);
  std::string raw;
  ChoiceCondition cc;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    Parser p(raw, sig, line);
    Symbol y = p.free_symbol();
    if (!y.is_var()) p.fail("choice condition keys must be free variables");
    p.expect(Tok::Assign, "after choice variable");
    CCEntry e;
    while (p.accept(Tok::Backslash)) {
      e.lambda_prefix.push_back(p.binder_symbol());
      p.expect(Tok::Dot, "after lambda-bound atom");
    }
    if (!p.accept_keyword("eps")) p.fail("expected 'eps'");
    e.eps_bound = p.binder_symbol();
    p.expect(Tok::Dot, "after eps-bound atom");
    e.body = p.formula();
    p.expect_end();
    if (cc.contains(y)) throw SyntaxError(line, 1, "duplicate entry for " + y.str());
    y.sort = e.sort();
    cc = cc.with(y, std::move(e));
  }
  return cc;
}

}  // namespace epsk
