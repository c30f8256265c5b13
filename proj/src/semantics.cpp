// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "semantics.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace epsk {

using nlohmann::json;

// ---- structures ------------------------------------------------------------

namespace {
constexpr std::size_t kAnyArity = std::numeric_limits<std::size_t>::max();

std::size_t power(int base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= static_cast<std::size_t>(base);
  return r;
}
}  // namespace

Structure::Structure(int size, int eps_default) : size_(size), eps_default_(eps_default) {
  if (size < 1) throw Error(ErrorKind::Input, "universe must not be empty");
  if (eps_default < 0 || eps_default >= size)
    throw Error(ErrorKind::Input, "eps_default outside the universe");
  for (int k = 0; k < size; ++k) ids_.push_back(k);
}

std::size_t Structure::offset(const int* args, std::size_t n) const {
  std::size_t off = 0;
  for (std::size_t k = 0; k < n; ++k) off = off * static_cast<std::size_t>(size_) + args[k];
  return off;
}

void Structure::set_pred(const std::string& name, std::size_t arity, std::vector<char> table) {
  if (table.size() != power(size_, arity))
    throw Error(ErrorKind::Input, "relation table for " + name + " has the wrong size");
  preds_[name] = {arity, std::move(table)};
}

void Structure::set_fun(const std::string& name, std::size_t arity, std::vector<int> table) {
  if (table.size() != power(size_, arity))
    throw Error(ErrorKind::Input, "function table for " + name + " has the wrong size");
  for (int v : table)
    if (v < 0 || v >= size_) throw Error(ErrorKind::Input, "value of " + name + " outside universe");
  funs_[name] = {arity, std::move(table)};
}

void Structure::add_tuple(const std::string& name, const std::vector<int>& args) {
  auto it = preds_.find(name);
  if (it == preds_.end() || it->second.first == kAnyArity) {
    preds_[name] = {args.size(), std::vector<char>(power(size_, args.size()), 0)};
    it = preds_.find(name);
  }
  if (it->second.first != args.size())
    throw Error(ErrorKind::Input, "tuples of " + name + " differ in length");
  for (int a : args)
    if (a < 0 || a >= size_) throw Error(ErrorKind::Input, "tuple of " + name + " outside universe");
  it->second.second[offset(args.data(), args.size())] = 1;
}

bool Structure::pred(const std::string& name, const int* args, std::size_t n) const {
  auto it = preds_.find(name);
  if (it == preds_.end()) throw Error(ErrorKind::Input, "structure does not interpret " + name);
  if (it->second.first == kAnyArity) return false;
  if (it->second.first != n) throw Error(ErrorKind::Sort, "arity mismatch for " + name);
  return it->second.second[offset(args, n)] != 0;
}

int Structure::fun(const std::string& name, const int* args, std::size_t n) const {
  auto it = funs_.find(name);
  if (it == funs_.end()) throw Error(ErrorKind::Input, "structure does not interpret " + name);
  if (it->second.first != n) throw Error(ErrorKind::Sort, "arity mismatch for " + name);
  return it->second.second[offset(args, n)];
}

Structure Structure::from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Input, "structure must be a JSON object");
  if (!j.contains("universe") || !j["universe"].is_array() || j["universe"].empty())
    throw Error(ErrorKind::Input, "structure needs a non-empty universe array");
  std::map<long long, int> index;
  std::vector<long long> ids;
  for (const json& e : j["universe"]) {
    if (!e.is_number_integer()) throw Error(ErrorKind::Input, "element ids must be integers");
    long long id = e.get<long long>();
    if (!index.emplace(id, static_cast<int>(ids.size())).second)
      throw Error(ErrorKind::Input, "duplicate element id " + std::to_string(id));
    ids.push_back(id);
  }
  auto elem = [&](const json& e) {
    if (!e.is_number_integer()) throw Error(ErrorKind::Input, "element ids must be integers");
    auto it = index.find(e.get<long long>());
    if (it == index.end())
      throw Error(ErrorKind::Input, "element " + e.dump() + " is not in the universe");
    return it->second;
  };
  int def = 0;
  if (j.contains("eps_default")) def = elem(j["eps_default"]);
  Structure m(static_cast<int>(ids.size()), def);
  m.ids_ = ids;
  if (j.contains("preds")) {
    for (const auto& [name, tuples] : j["preds"].items()) {
      if (!tuples.is_array()) throw Error(ErrorKind::Input, "relation " + name + " must be an array");
      m.preds_[name] = {kAnyArity, {}};
      for (const json& t : tuples) {
        if (!t.is_array()) throw Error(ErrorKind::Input, "tuples of " + name + " must be arrays");
        std::vector<int> args;
        for (const json& e : t) args.push_back(elem(e));
        m.add_tuple(name, args);
      }
    }
  }
  if (j.contains("funs")) {
    for (const auto& [name, tab] : j["funs"].items()) {
      if (tab.is_number_integer()) {
        m.set_fun(name, 0, {elem(tab)});
        continue;
      }
      if (!tab.is_object()) throw Error(ErrorKind::Input, "function " + name + " must be an object");
      std::size_t arity = kAnyArity;
      std::map<std::vector<int>, int> entries;
      for (const auto& [key, val] : tab.items()) {
        std::vector<int> args;
        std::string k = key;
        k.erase(std::remove_if(k.begin(), k.end(),
                               [](char c) { return c == '[' || c == ']' || c == ' '; }),
                k.end());
        std::stringstream ss(k);
        std::string part;
        while (std::getline(ss, part, ','))
          if (!part.empty()) args.push_back(elem(json(std::stoll(part))));
        if (arity == kAnyArity) arity = args.size();
        if (args.size() != arity) throw Error(ErrorKind::Input, "keys of " + name + " differ in length");
        entries[args] = elem(val);
      }
      if (arity == kAnyArity) throw Error(ErrorKind::Input, "function " + name + " has no entries");
      std::vector<int> table(power(m.size_, arity), -1);
      for (const auto& [args, v] : entries) table[m.offset(args.data(), args.size())] = v;
      for (int v : table)
        if (v < 0) throw Error(ErrorKind::Input, "function " + name + " is not total");
      m.set_fun(name, arity, std::move(table));
    }
  }
  return m;
}

json Structure::to_json() const {
  json j;
  j["universe"] = ids_;
  j["eps_default"] = ids_[eps_default_];
  json preds = json::object();
  for (const auto& [name, p] : preds_) {
    json tuples = json::array();
    if (p.first != kAnyArity) {
      for (std::size_t off = 0; off < p.second.size(); ++off) {
        if (!p.second[off]) continue;
        std::vector<long long> t(p.first);
        std::size_t rest = off;
        for (std::size_t k = p.first; k-- > 0;) {
          t[k] = ids_[rest % size_];
          rest /= size_;
        }
        tuples.push_back(t);
      }
    }
    preds[name] = tuples;
  }
  j["preds"] = preds;
  json funs = json::object();
  for (const auto& [name, f] : funs_) {
    json tab = json::object();
    for (std::size_t off = 0; off < f.second.size(); ++off) {
      std::vector<long long> t(f.first);
      std::size_t rest = off;
      for (std::size_t k = f.first; k-- > 0;) {
        t[k] = ids_[rest % size_];
        rest /= size_;
      }
      std::string key;
      for (std::size_t k = 0; k < t.size(); ++k) key += (k ? "," : "") + std::to_string(t[k]);
      tab[key] = ids_[f.second[off]];
    }
    funs[name] = tab;
  }
  j["funs"] = funs;
  return j;
}

std::vector<Structure> parse_structures(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Input, std::string("bad structure JSON: ") + e.what());
  }
  std::vector<Structure> out;
  if (j.is_array()) {
    for (const json& s : j) out.push_back(Structure::from_json(s));
  } else {
    out.push_back(Structure::from_json(j));
  }
  if (out.empty()) throw Error(ErrorKind::Input, "no structures given");
  return out;
}

// ---- evaluation ------------------------------------------------------------

void Valuation::set(const Symbol& s, int v) {
  for (auto it = slots_.rbegin(); it != slots_.rend(); ++it) {
    if (it->first == s) {
      it->second = v;
      return;
    }
  }
  slots_.emplace_back(s, v);
}

std::optional<int> Valuation::get(const Symbol& s) const {
  for (auto it = slots_.rbegin(); it != slots_.rend(); ++it)
    if (it->first == s) return it->second;
  return std::nullopt;
}

namespace {

int value_of(const Symbol& s, const Valuation& d) {
  auto v = d.get(s);
  if (!v) throw Error(ErrorKind::Input, "no value for " + s.str());
  return *v;
}

}  // namespace

int eval_term(const Expr& t, const Structure& m, Valuation& d) {
  switch (t.kind()) {
    case Kind::Sym:
      if (t.symbol().is_constant()) return m.fun(t.symbol().name, nullptr, 0);
      return value_of(t.symbol(), d);
    case Kind::App: {
      if (!t.symbol().is_constant())
        throw Error(ErrorKind::Scale, "the evaluator does not interpret applied " + t.symbol().str());
      int args[16];
      std::vector<int> big;
      int* a = args;
      if (t.kids().size() > 16) {
        big.resize(t.kids().size());
        a = big.data();
      }
      for (std::size_t k = 0; k < t.kids().size(); ++k) a[k] = eval_term(t.kid(k), m, d);
      return m.fun(t.symbol().name, a, t.kids().size());
    }
    case Kind::Eps: {
      for (int u = 0; u < m.size(); ++u) {
        d.push(t.symbol(), u);
        bool ok = eval_formula(t.body(), m, d);
        d.pop();
        if (ok) return u;
      }
      return m.eps_default();
    }
    default:
      throw Error(ErrorKind::Sort, "not a term: " + to_string(t));
  }
}

bool eval_formula(const Expr& f, const Structure& m, Valuation& d) {
  switch (f.kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Pred: {
      int args[16];
      std::vector<int> big;
      int* a = args;
      if (f.kids().size() > 16) {
        big.resize(f.kids().size());
        a = big.data();
      }
      for (std::size_t k = 0; k < f.kids().size(); ++k) a[k] = eval_term(f.kid(k), m, d);
      return m.pred(f.symbol().name, a, f.kids().size());
    }
    case Kind::Eq: return eval_term(f.kid(0), m, d) == eval_term(f.kid(1), m, d);
    case Kind::Not: return !eval_formula(f.kid(0), m, d);
    case Kind::And: return eval_formula(f.kid(0), m, d) && eval_formula(f.kid(1), m, d);
    case Kind::Or: return eval_formula(f.kid(0), m, d) || eval_formula(f.kid(1), m, d);
    case Kind::Implies: return !eval_formula(f.kid(0), m, d) || eval_formula(f.kid(1), m, d);
    case Kind::Iff: return eval_formula(f.kid(0), m, d) == eval_formula(f.kid(1), m, d);
    case Kind::Forall:
    case Kind::Exists: {
      bool want = f.kind() == Kind::Exists;
      for (int u = 0; u < m.size(); ++u) {
        d.push(f.symbol(), u);
        bool ok = eval_formula(f.body(), m, d);
        d.pop();
        if (ok == want) return want;
      }
      return !want;
    }
    default:
      throw Error(ErrorKind::Sort, "not a formula: " + to_string(f));
  }
}

// ---- semantic valuations ---------------------------------------------------

int RaisingFunction::apply(const Valuation& tau, int universe) const {
  std::size_t off = 0;
  for (const Symbol& a : access) off = off * static_cast<std::size_t>(universe) + value_of(a, tau);
  return table.at(off);
}

Valuation epsilon_combine(const SemValuation& pi, const Valuation& tau, int universe) {
  Valuation d = tau;
  for (const auto& [x, f] : pi.fns) d.set(x, f.apply(tau, universe));
  return d;
}

Scope scope_of(const std::vector<Sequent>& goals, const ChoiceCondition& cc) {
  SymbolSet vars, atoms;
  for (const Sequent& g : goals) {
    SymbolSet v = free_symbols(g, kFreeVars), a = free_symbols(g, kFreeAtoms);
    vars.insert(v.begin(), v.end());
    atoms.insert(a.begin(), a.end());
  }
  for (const auto& [y, e] : cc.entries()) {
    vars.insert(y);
    SymbolSet v = free_symbols(e.body, kFreeVars), a = free_symbols(e.body, kFreeAtoms);
    vars.insert(v.begin(), v.end());
    atoms.insert(a.begin(), a.end());
  }
  return {{vars.begin(), vars.end()}, {atoms.begin(), atoms.end()}};
}

void check_scale(const Scope& scope, const Structure& m, const OracleLimits& lim) {
  if (m.size() > lim.max_universe)
    throw Error(ErrorKind::Scale, "universe of size " + std::to_string(m.size()) +
                                      " exceeds the oracle limit " + std::to_string(lim.max_universe));
  if (static_cast<int>(scope.atoms.size()) > lim.max_atoms)
    throw Error(ErrorKind::Scale, std::to_string(scope.atoms.size()) +
                                      " free atoms exceed the oracle limit " +
                                      std::to_string(lim.max_atoms));
  if (static_cast<int>(scope.vars.size()) > lim.max_vars)
    throw Error(ErrorKind::Scale, std::to_string(scope.vars.size()) +
                                      " free variables exceed the oracle limit " +
                                      std::to_string(lim.max_vars));
}

namespace {

void require_first_order(const ChoiceCondition& cc) {
  for (const auto& [y, e] : cc.entries())
    if (!e.lambda_prefix.empty() || !y.sort.is_base())
      throw Error(ErrorKind::Scale, "the oracle handles only lambda-free entries; " + y.str() +
                                        " has a lambda prefix");
}

// Calls f(tau) for every valuation of the atoms; stops when f returns false.
template <class F>
bool all_tau(const std::vector<Symbol>& atoms, int n, F&& f) {
  std::vector<int> vals(atoms.size(), 0);
  while (true) {
    Valuation tau;
    for (std::size_t k = 0; k < atoms.size(); ++k) tau.push(atoms[k], vals[k]);
    if (!f(tau)) return false;
    std::size_t k = atoms.size();
    while (k > 0) {
      --k;
      if (++vals[k] < n) break;
      vals[k] = 0;
      if (k == 0) return true;
    }
    if (atoms.empty()) return true;
  }
}

bool choice_holds(const ChoiceCondition& cc, const Structure& m, Valuation& d) {
  for (const auto& [y, e] : cc.entries()) {
    bool some = false;
    for (int u = 0; u < m.size() && !some; ++u) {
      d.push(e.eps_bound, u);
      some = eval_formula(e.body, m, d);
      d.pop();
    }
    if (!some) continue;
    d.push(e.eps_bound, value_of(y, d));
    bool chosen = eval_formula(e.body, m, d);
    d.pop();
    if (!chosen) return false;
  }
  return true;
}

bool goals_hold(const std::vector<Sequent>& goals, const Structure& m, Valuation& d) {
  for (const Sequent& g : goals) {
    bool any = false;
    for (const Expr& f : g.formulas) {
      if (eval_formula(f, m, d)) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

// Atoms x may read without closing a cycle with exactly one N edge: a is
// excluded iff some b with x P* b has (b, a) in N.
std::vector<Symbol> readable_atoms(const Symbol& x, const VarCond& vc, const Scope& scope) {
  SymbolSet down = reachable_plus(vc.positive(), {x});
  down.insert(x);
  std::vector<Symbol> out;
  for (const Symbol& a : scope.atoms) {
    bool bad = false;
    for (const Symbol& b : down)
      if (vc.negative().count({b, a})) {
        bad = true;
        break;
      }
    if (!bad) out.push_back(a);
  }
  return out;
}

}  // namespace

bool is_compatible(const SemValuation& pi, const ChoiceCondition& cc, const VarCond& vc,
                   const Structure& m, const Scope& scope) {
  require_first_order(cc);
  EdgeSet s;
  for (const auto& [x, f] : pi.fns)
    for (const Symbol& a : f.access) s.emplace(a, x);
  if (!is_consistent(vc.with_positive(s))) return false;
  return all_tau(scope.atoms, m.size(), [&](const Valuation& tau) {
    Valuation d = epsilon_combine(pi, tau, m.size());
    return choice_holds(cc, m, d);
  });
}

bool pi_valid(const std::vector<Sequent>& goals, const SemValuation& pi, const Structure& m,
              const Scope& scope) {
  return all_tau(scope.atoms, m.size(), [&](const Valuation& tau) {
    Valuation d = epsilon_combine(pi, tau, m.size());
    return goals_hold(goals, m, d);
  });
}

void enumerate_compatible(const ChoiceCondition& cc, const VarCond& vc, const Structure& m,
                          const Scope& scope, bool maximal,
                          const std::function<bool(const SemValuation&)>& visit) {
  require_first_order(cc);
  if (!is_consistent(vc)) return;
  const int n = m.size();
  std::vector<std::vector<std::vector<Symbol>>> choices;  // per var: candidate access sets
  for (const Symbol& x : scope.vars) {
    std::vector<Symbol> can = readable_atoms(x, vc, scope);
    std::vector<std::vector<Symbol>> sets;
    if (maximal) {
      sets.push_back(can);
    } else {
      for (std::size_t mask = 0; mask < (std::size_t{1} << can.size()); ++mask) {
        std::vector<Symbol> s;
        for (std::size_t k = 0; k < can.size(); ++k)
          if (mask & (std::size_t{1} << k)) s.push_back(can[k]);
        sets.push_back(s);
      }
    }
    choices.push_back(std::move(sets));
  }
  SemValuation pi;
  bool stop = false;
  // Depth-first over variables, then over each table as an odometer.
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == scope.vars.size()) {
      bool ok = all_tau(scope.atoms, n, [&](const Valuation& tau) {
        Valuation d = epsilon_combine(pi, tau, n);
        return choice_holds(cc, m, d);
      });
      if (ok && !visit(pi)) stop = true;
      return;
    }
    const Symbol& x = scope.vars[i];
    for (const auto& access : choices[i]) {
      RaisingFunction f{access, std::vector<int>(power(n, access.size()), 0)};
      while (true) {
        pi.fns[x] = f;
        rec(i + 1);
        if (stop) return;
        std::size_t k = f.table.size();
        bool carry = true;
        while (carry && k > 0) {
          --k;
          if (++f.table[k] < n)
            carry = false;
          else
            f.table[k] = 0;
        }
        if (carry) break;
      }
    }
    pi.fns.erase(x);
  };
  rec(0);
}

bool is_valid(const std::vector<Sequent>& goals, const ChoiceCondition& cc, const VarCond& vc,
              const Structure& m, const OracleLimits& lim) {
  require_first_order(cc);
  Scope scope = scope_of(goals, cc);
  check_scale(scope, m, lim);
  if (!is_consistent(vc)) return false;
  const int n = m.size();
  const std::size_t nv = scope.vars.size();
  std::vector<RaisingFunction> fns(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    fns[i].access = readable_atoms(scope.vars[i], vc, scope);
    fns[i].table.assign(power(n, fns[i].access.size()), -1);
  }
  std::vector<Valuation> taus;
  all_tau(scope.atoms, n, [&](const Valuation& tau) {
    taus.push_back(tau);
    return true;
  });
  // keys[t][i]: table slot of variable i under taus[t]
  std::vector<std::vector<std::size_t>> keys(taus.size(), std::vector<std::size_t>(nv));
  for (std::size_t t = 0; t < taus.size(); ++t)
    for (std::size_t i = 0; i < nv; ++i) {
      std::size_t off = 0;
      for (const Symbol& a : fns[i].access) off = off * n + value_of(a, taus[t]);
      keys[t][i] = off;
    }
  std::function<bool(std::size_t)> search = [&](std::size_t t) -> bool {
    if (t == taus.size()) return true;
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < nv; ++i)
      if (fns[i].table[keys[t][i]] < 0) open.push_back(i);
    std::vector<int> vals(open.size(), 0);
    while (true) {
      for (std::size_t k = 0; k < open.size(); ++k) fns[open[k]].table[keys[t][open[k]]] = vals[k];
      Valuation d = taus[t];
      for (std::size_t i = 0; i < nv; ++i) d.set(scope.vars[i], fns[i].table[keys[t][i]]);
      if (choice_holds(cc, m, d) && goals_hold(goals, m, d) && search(t + 1)) return true;
      std::size_t k = open.size();
      bool carry = true;
      while (carry && k > 0) {
        --k;
        if (++vals[k] < n)
          carry = false;
        else
          vals[k] = 0;
      }
      if (carry) break;
    }
    for (std::size_t i : open) fns[i].table[keys[t][i]] = -1;
    return false;
  };
  return search(0);
}

bool reduces_to(const std::vector<Sequent>& g0, const std::vector<Sequent>& g1,
                const ChoiceCondition& cc, const VarCond& vc, const Structure& m,
                const OracleLimits& lim) {
  std::vector<Sequent> all = g0;
  all.insert(all.end(), g1.begin(), g1.end());
  Scope scope = scope_of(all, cc);
  check_scale(scope, m, lim);
  bool holds = true;
  enumerate_compatible(cc, vc, m, scope, true, [&](const SemValuation& pi) {
    if (pi_valid(g1, pi, m, scope) && !pi_valid(g0, pi, m, scope)) holds = false;
    return holds;
  });
  return holds;
}

}  // namespace epsk
