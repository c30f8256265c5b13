// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "syntax.hpp"

#include <algorithm>
#include <unordered_map>

namespace epsk {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Sort: return "sort";
    case ErrorKind::Undeclared: return "undeclared";
    case ErrorKind::IllFormed: return "ill-formed";
    case ErrorKind::Rule: return "rule";
    case ErrorKind::Substitution: return "substitution";
    case ErrorKind::Scale: return "scale";
    case ErrorKind::Input: return "input";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

// ---- sorts -----------------------------------------------------------------

Sort::Sort() {
  static const std::shared_ptr<const Rep> i =
      std::make_shared<const Rep>(Rep{"i", nullptr, nullptr});
  rep_ = i;
}

Sort Sort::base(const std::string& name) {
  if (name == "i") return Sort();
  return Sort(std::make_shared<const Rep>(Rep{name, nullptr, nullptr}));
}

Sort Sort::fun(const Sort& arg, const Sort& result) {
  return Sort(std::make_shared<const Rep>(Rep{"", arg.rep_, result.rep_}));
}

Sort Sort::curried(std::size_t arity) {
  Sort s;
  for (std::size_t k = 0; k < arity; ++k) s = fun(Sort(), s);
  return s;
}

Sort Sort::relation(std::size_t arity) {
  Sort s = base("o");
  for (std::size_t k = 0; k < arity; ++k) s = fun(Sort(), s);
  return s;
}

Sort Sort::arg() const {
  if (is_base()) throw Error(ErrorKind::Sort, "base sort has no argument");
  return Sort(rep_->arg);
}

Sort Sort::result() const {
  if (is_base()) throw Error(ErrorKind::Sort, "base sort has no result");
  return Sort(rep_->result);
}

std::size_t Sort::arity() const {
  std::size_t n = 0;
  for (const Rep* r = rep_.get(); r->arg; r = r->result.get()) ++n;
  return n;
}

bool Sort::equal(const Rep* a, const Rep* b) {
  if (a == b) return true;
  if ((a->arg == nullptr) != (b->arg == nullptr)) return false;
  if (!a->arg) return a->name == b->name;
  return equal(a->arg.get(), b->arg.get()) &&
         equal(a->result.get(), b->result.get());
}

bool operator==(const Sort& a, const Sort& b) {
  return Sort::equal(a.rep_.get(), b.rep_.get());
}

std::string Sort::render(const Rep* r) {
  if (!r->arg) return r->name;
  std::string lhs = render(r->arg.get());
  if (r->arg->arg) lhs = "(" + lhs + ")";
  return lhs + " -> " + render(r->result.get());
}

std::string Sort::str() const { return render(rep_.get()); }

// ---- symbols ---------------------------------------------------------------

unsigned class_bit(SymbolClass c) {
  switch (c) {
    case SymbolClass::FreeVar: return kFreeVars;
    case SymbolClass::FreeAtom: return kFreeAtoms;
    case SymbolClass::BoundAtom: return kBoundAtoms;
    case SymbolClass::Constant: return 8u;
  }
  return 0;
}

Symbol Symbol::var(std::string name, Sort s) {
  return Symbol{SymbolClass::FreeVar, std::move(name), std::move(s)};
}
Symbol Symbol::atom(std::string name, Sort s) {
  return Symbol{SymbolClass::FreeAtom, std::move(name), std::move(s)};
}
Symbol Symbol::bound(std::string name, Sort s) {
  return Symbol{SymbolClass::BoundAtom, std::move(name), std::move(s)};
}
Symbol Symbol::constant(std::string name, Sort s) {
  return Symbol{SymbolClass::Constant, std::move(name), std::move(s)};
}

std::string Symbol::str() const {
  switch (cls) {
    case SymbolClass::FreeVar: return "?" + name;
    case SymbolClass::FreeAtom: return "!" + name;
    default: return name;
  }
}

bool operator==(const Symbol& a, const Symbol& b) {
  return a.cls == b.cls && a.name == b.name;
}
bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }
bool operator<(const Symbol& a, const Symbol& b) {
  if (a.cls != b.cls) return a.cls < b.cls;
  return a.name < b.name;
}

// ---- expressions -----------------------------------------------------------

namespace {

void merge_into(std::vector<Symbol>& acc, const std::vector<Symbol>& add) {
  if (add.empty()) return;
  if (acc.empty()) {
    acc = add;
    return;
  }
  std::vector<Symbol> out;
  out.reserve(acc.size() + add.size());
  std::set_union(acc.begin(), acc.end(), add.begin(), add.end(),
                 std::back_inserter(out));
  acc.swap(out);
}

void insert_sorted(std::vector<Symbol>& v, const Symbol& s) {
  auto it = std::lower_bound(v.begin(), v.end(), s);
  if (it == v.end() || *it != s) v.insert(it, s);
}

void erase_sorted(std::vector<Symbol>& v, const Symbol& s) {
  auto it = std::lower_bound(v.begin(), v.end(), s);
  if (it != v.end() && *it == s) v.erase(it);
}

}  // namespace

Expr Expr::make(Kind k, Symbol s, std::vector<Expr> kids) {
  for (const Expr& c : kids)
    if (!c) throw Error(ErrorKind::Internal, "null subexpression");
  auto n = std::make_shared<detail::ExprNode>();
  n->kind = k;
  for (const Expr& c : kids) merge_into(n->free, c.free());
  switch (k) {
    case Kind::Sym:
    case Kind::App:
    case Kind::Pred:
      if (!s.is_constant()) insert_sorted(n->free, s);
      break;
    case Kind::Eps:
    case Kind::Forall:
    case Kind::Exists:
      erase_sorted(n->free, s);
      break;
    default:
      break;
  }
  n->symbol = std::move(s);
  n->kids = std::move(kids);
  return Expr(std::shared_ptr<const detail::ExprNode>(std::move(n)));
}

Expr Expr::sym(const Symbol& s) { return make(Kind::Sym, s, {}); }

Expr Expr::app(const Symbol& head, std::vector<Expr> args) {
  if (args.empty()) return sym(head);
  for (const Expr& a : args)
    if (!a.is_term()) throw Error(ErrorKind::Sort, "formula used as argument");
  return make(Kind::App, head, std::move(args));
}

Expr Expr::eps(const Symbol& bound, const Expr& body) {
  if (!body.is_formula()) throw Error(ErrorKind::Sort, "eps body is not a formula");
  return make(Kind::Eps, bound, {body});
}

Expr Expr::top() {
  static const Expr t = make(Kind::True, Symbol{}, {});
  return t;
}

Expr Expr::bottom() {
  static const Expr f = make(Kind::False, Symbol{}, {});
  return f;
}

Expr Expr::pred(const Symbol& head, std::vector<Expr> args) {
  for (const Expr& a : args)
    if (!a.is_term()) throw Error(ErrorKind::Sort, "formula used as argument");
  return make(Kind::Pred, head, std::move(args));
}

Expr Expr::eq(const Expr& lhs, const Expr& rhs) {
  if (!lhs.is_term() || !rhs.is_term())
    throw Error(ErrorKind::Sort, "equation between non-terms");
  return make(Kind::Eq, Symbol{}, {lhs, rhs});
}

Expr Expr::neg(const Expr& a) {
  if (!a.is_formula()) throw Error(ErrorKind::Sort, "negation of a term");
  return make(Kind::Not, Symbol{}, {a});
}

Expr Expr::binary(Kind k, const Expr& a, const Expr& b) {
  if (!a.is_formula() || !b.is_formula())
    throw Error(ErrorKind::Sort, "connective applied to a term");
  return make(k, Symbol{}, {a, b});
}

Expr Expr::conj(const Expr& a, const Expr& b) { return binary(Kind::And, a, b); }
Expr Expr::disj(const Expr& a, const Expr& b) { return binary(Kind::Or, a, b); }
Expr Expr::implies(const Expr& a, const Expr& b) { return binary(Kind::Implies, a, b); }
Expr Expr::iff(const Expr& a, const Expr& b) { return binary(Kind::Iff, a, b); }

Expr Expr::binder(Kind k, const Symbol& v, const Expr& body) {
  if (!v.is_bound()) throw Error(ErrorKind::IllFormed, "binder must be a bound atom");
  if (k == Kind::Eps) return eps(v, body);
  if (!body.is_formula()) throw Error(ErrorKind::Sort, "quantifier over a term");
  return make(k, v, {body});
}

Expr Expr::forall(const Symbol& v, const Expr& body) { return binder(Kind::Forall, v, body); }
Expr Expr::exists(const Symbol& v, const Expr& body) { return binder(Kind::Exists, v, body); }

bool Expr::is_term() const {
  Kind k = kind();
  return k == Kind::Sym || k == Kind::App || k == Kind::Eps;
}

bool Expr::is_binder() const {
  Kind k = kind();
  return k == Kind::Eps || k == Kind::Forall || k == Kind::Exists;
}

bool Expr::is_binary() const {
  Kind k = kind();
  return k == Kind::And || k == Kind::Or || k == Kind::Implies || k == Kind::Iff;
}

bool Expr::has_free(const Symbol& s) const {
  const auto& f = free();
  return std::binary_search(f.begin(), f.end(), s);
}

// ---- substitutions ---------------------------------------------------------

Sort sort_of(const Expr& t) {
  switch (t.kind()) {
    case Kind::Sym:
      return t.symbol().sort;
    case Kind::App: {
      Sort s = t.symbol().sort;
      for (std::size_t k = 0; k < t.kids().size(); ++k) {
        if (s.is_base())
          throw Error(ErrorKind::Sort, "too many arguments for " + t.symbol().str());
        s = s.result();
      }
      return s;
    }
    case Kind::Eps:
      return t.symbol().sort;
    default:
      throw Error(ErrorKind::Sort, "formula has no term sort");
  }
}

Substitution Substitution::make(const std::vector<std::pair<Symbol, Expr>>& bindings) {
  Substitution s;
  bool vars = false, atoms = false;
  for (const auto& [x, t] : bindings) {
    if (x.is_var())
      vars = true;
    else if (x.is_atom())
      atoms = true;
    else
      throw Error(ErrorKind::Substitution, x.str() + " is not a free variable or free atom");
    if (!t || !t.is_term())
      throw Error(ErrorKind::Sort, "substitution range must be terms");
    if (sort_of(t) != x.sort)
      throw Error(ErrorKind::Sort, "sort mismatch in binding for " + x.str() + ": " +
                                       x.sort.str() + " vs " + sort_of(t).str());
    check_no_free_bound(t, "substitution range");
    if (!s.map_.emplace(x, t).second)
      throw Error(ErrorKind::Substitution, "duplicate binding for " + x.str());
  }
  if (vars && atoms)
    throw Error(ErrorKind::Substitution,
                "substitution mixes free variables and free atoms");
  return s;
}

bool Substitution::over_vars() const {
  return !map_.empty() && map_.begin()->first.is_var();
}
bool Substitution::over_atoms() const {
  return !map_.empty() && map_.begin()->first.is_atom();
}

const Expr* Substitution::find(const Symbol& x) const {
  auto it = map_.find(x);
  return it == map_.end() ? nullptr : &it->second;
}

std::vector<Symbol> Substitution::domain() const {
  std::vector<Symbol> d;
  for (const auto& kv : map_) d.push_back(kv.first);
  return d;
}

SymbolSet free_symbols(const Expr& e, unsigned mask) {
  SymbolSet out;
  for (const Symbol& s : e.free())
    if (class_bit(s.cls) & mask) out.insert(s);
  return out;
}

SymbolSet free_symbols(const Sequent& q, unsigned mask) {
  SymbolSet out;
  for (const Expr& f : q.formulas) {
    SymbolSet part = free_symbols(f, mask);
    out.insert(part.begin(), part.end());
  }
  return out;
}

namespace {

void collect_constants(const Expr& e, SymbolSet& out,
                       std::unordered_map<const void*, bool>& seen) {
  if (!seen.emplace(e.id(), true).second) return;
  if ((e.kind() == Kind::Sym || e.kind() == Kind::App || e.kind() == Kind::Pred) &&
      e.symbol().is_constant())
    out.insert(e.symbol());
  for (const Expr& c : e.kids()) collect_constants(c, out, seen);
}

void collect_binders(const Expr& e, std::set<std::string>& out,
                     std::unordered_map<const void*, bool>& seen) {
  if (!seen.emplace(e.id(), true).second) return;
  if (e.is_binder()) out.insert(e.symbol().name);
  for (const Expr& c : e.kids()) collect_binders(c, out, seen);
}

}  // namespace

SymbolSet constants(const Expr& e) {
  SymbolSet out;
  std::unordered_map<const void*, bool> seen;
  collect_constants(e, out, seen);
  return out;
}

std::set<std::string> binder_names(const Expr& e) {
  std::set<std::string> out;
  std::unordered_map<const void*, bool> seen;
  collect_binders(e, out, seen);
  return out;
}

void check_no_free_bound(const Expr& e, const char* what) {
  for (const Symbol& s : e.free())
    if (s.is_bound())
      throw Error(ErrorKind::IllFormed,
                  std::string("unbound bound atom '") + s.name + "' in " + what);
}

// ---- replacement -----------------------------------------------------------

namespace {

class Replacer {
 public:
  Replacer(const std::map<Symbol, Expr>& m, Renaming pol) : map_(m), pol_(pol) {
    for (const auto& [k, t] : map_) {
      keys_.push_back(k);
      std::set<std::string> names;
      for (const Symbol& s : t.free())
        if (s.is_bound()) names.insert(s.name);
      if (pol_ == Renaming::AvoidShadowing) {
        std::set<std::string> b = binder_names(t);
        names.insert(b.begin(), b.end());
      }
      names_.emplace(k, std::move(names));
    }
  }

  Expr run(const Expr& e) {
    if (!touches(e)) return e;
    auto it = memo_.find(e.id());
    if (it != memo_.end()) return it->second;
    Expr out = rebuild(e);
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  bool touches(const Expr& e) const {
    const auto& f = e.free();
    if (f.empty()) return false;
    for (const Symbol& k : keys_)
      if (std::binary_search(f.begin(), f.end(), k)) return true;
    return false;
  }

  static std::string fresh_name(const std::string& base,
                                const std::set<std::string>& avoid) {
    std::string stem = base;
    for (int k = 1;; ++k) {
      std::string cand = stem + "_" + std::to_string(k);
      if (!avoid.count(cand)) return cand;
    }
  }

  Expr rebuild(const Expr& e) {
    switch (e.kind()) {
      case Kind::Sym: {
        auto it = map_.find(e.symbol());
        return it == map_.end() ? e : it->second;
      }
      case Kind::App:
      case Kind::Pred: {
        std::vector<Expr> args;
        args.reserve(e.kids().size());
        for (const Expr& a : e.kids()) args.push_back(run(a));
        auto it = map_.find(e.symbol());
        if (it == map_.end() || e.kind() == Kind::Pred)
          return e.kind() == Kind::App ? Expr::app(e.symbol(), std::move(args))
                                       : Expr::pred(e.symbol(), std::move(args));
        const Expr& h = it->second;
        if (h.kind() == Kind::Sym) return Expr::app(h.symbol(), std::move(args));
        if (h.kind() == Kind::App) {
          std::vector<Expr> all = h.kids();
          all.insert(all.end(), args.begin(), args.end());
          return Expr::app(h.symbol(), std::move(all));
        }
        throw Error(ErrorKind::Substitution,
                    "cannot place a binder term in head position of " + e.symbol().str());
      }
      case Kind::Eps:
      case Kind::Forall:
      case Kind::Exists:
        return rebuild_binder(e);
      default: {
        std::vector<Expr> kids;
        kids.reserve(e.kids().size());
        bool same = true;
        for (const Expr& c : e.kids()) {
          kids.push_back(run(c));
          same = same && kids.back().id() == c.id();
        }
        if (same) return e;
        if (e.kind() == Kind::Eq) return Expr::eq(kids[0], kids[1]);
        if (e.kind() == Kind::Not) return Expr::neg(kids[0]);
        return Expr::binary(e.kind(), kids[0], kids[1]);
      }
    }
  }

  Expr rebuild_binder(const Expr& e) {
    const Symbol& v = e.symbol();
    const Expr& body = e.body();
    std::map<Symbol, Expr> inner;
    std::set<std::string> inserted;
    for (const auto& [k, t] : map_) {
      if (k == v || !body.has_free(k)) continue;
      inner.emplace(k, t);
      const auto& n = names_.at(k);
      inserted.insert(n.begin(), n.end());
    }
    if (inner.empty()) return e;
    if (!inserted.count(v.name)) {
      if (!map_.count(v)) return Expr::binder(e.kind(), v, run(body));
      Replacer sub(inner, pol_);
      return Expr::binder(e.kind(), v, sub.run(body));
    }
    std::set<std::string> avoid = inserted;
    for (const Symbol& s : body.free()) avoid.insert(s.name);
    std::set<std::string> inner_binders = binder_names(body);
    avoid.insert(inner_binders.begin(), inner_binders.end());
    avoid.insert(v.name);
    Symbol w = Symbol::bound(fresh_name(v.name, avoid), v.sort);
    inner.emplace(v, Expr::sym(w));
    Replacer sub(inner, pol_);
    return Expr::binder(e.kind(), w, sub.run(body));
  }

  const std::map<Symbol, Expr>& map_;
  Renaming pol_;
  std::vector<Symbol> keys_;
  std::map<Symbol, std::set<std::string>> names_;
  std::unordered_map<const void*, Expr> memo_;
};

}  // namespace

Expr replace_free(const Expr& e, const std::map<Symbol, Expr>& m, Renaming r) {
  if (m.empty()) return e;
  Replacer rep(m, r);
  return rep.run(e);
}

Expr instantiate(const Expr& body, const Symbol& v, const Expr& t, Renaming r) {
  std::map<Symbol, Expr> m{{v, t}};
  return replace_free(body, m, r);
}

Expr apply_subst(const Expr& e, const Substitution& s) {
  return replace_free(e, s.bindings(), Renaming::AvoidShadowing);
}

Sequent apply_subst(const Sequent& q, const Substitution& s) {
  Sequent out;
  for (const Expr& f : q.formulas) out.formulas.push_back(apply_subst(f, s));
  return out;
}

// ---- alpha equivalence -----------------------------------------------------

namespace {

using Env = std::vector<const std::string*>;

// Level of the innermost binding of `name`, or -1 when unbound.
int lookup(const Env& env, const std::string& name) {
  for (int k = static_cast<int>(env.size()) - 1; k >= 0; --k)
    if (*env[k] == name) return k;
  return -1;
}

bool same_symbol(const Symbol& a, const Env& ea, const Symbol& b, const Env& eb) {
  if (a.cls != b.cls) return false;
  if (!a.is_bound()) return a.name == b.name;
  int la = lookup(ea, a.name), lb = lookup(eb, b.name);
  if (la != lb) return false;
  return la >= 0 || a.name == b.name;
}

bool alpha(const Expr& a, Env& ea, const Expr& b, Env& eb) {
  if (a.id() == b.id()) {
    bool stable = true;
    for (const Symbol& s : a.free()) {
      if (s.is_bound() && lookup(ea, s.name) != lookup(eb, s.name)) {
        stable = false;
        break;
      }
    }
    if (stable) return true;
  }
  if (a.kind() != b.kind() || a.kids().size() != b.kids().size()) return false;
  switch (a.kind()) {
    case Kind::Sym:
    case Kind::App:
    case Kind::Pred:
      if (!same_symbol(a.symbol(), ea, b.symbol(), eb)) return false;
      break;
    case Kind::Eps:
    case Kind::Forall:
    case Kind::Exists: {
      ea.push_back(&a.symbol().name);
      eb.push_back(&b.symbol().name);
      bool ok = alpha(a.body(), ea, b.body(), eb);
      ea.pop_back();
      eb.pop_back();
      return ok;
    }
    default:
      break;
  }
  for (std::size_t k = 0; k < a.kids().size(); ++k)
    if (!alpha(a.kid(k), ea, b.kid(k), eb)) return false;
  return true;
}

void key(const Expr& e, std::vector<std::string>& env, std::string& out) {
  auto sym = [&](const Symbol& s) {
    if (s.is_bound()) {
      for (int k = static_cast<int>(env.size()) - 1; k >= 0; --k) {
        if (env[k] == s.name) {
          out += "#" + std::to_string(k);
          return;
        }
      }
    }
    out += s.str();
  };
  switch (e.kind()) {
    case Kind::Sym: sym(e.symbol()); return;
    case Kind::App:
    case Kind::Pred:
      sym(e.symbol());
      out += '(';
      for (std::size_t k = 0; k < e.kids().size(); ++k) {
        if (k) out += ',';
        key(e.kid(k), env, out);
      }
      out += ')';
      return;
    case Kind::Eps:
    case Kind::Forall:
    case Kind::Exists:
      out += e.kind() == Kind::Eps ? "E" : e.kind() == Kind::Forall ? "A" : "X";
      out += '#' + std::to_string(env.size()) + '.';
      env.push_back(e.symbol().name);
      key(e.body(), env, out);
      env.pop_back();
      return;
    case Kind::True: out += 'T'; return;
    case Kind::False: out += 'F'; return;
    default: {
      static const char* tags[] = {"", "", "", "", "", "", "=", "~", "&", "|", ">", "<"};
      out += tags[static_cast<int>(e.kind())];
      out += '(';
      for (std::size_t k = 0; k < e.kids().size(); ++k) {
        if (k) out += ',';
        key(e.kid(k), env, out);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace

bool alpha_equal(const Expr& a, const Expr& b) {
  Env ea, eb;
  return alpha(a, ea, b, eb);
}

bool alpha_equal(const Sequent& a, const Sequent& b) {
  if (a.formulas.size() != b.formulas.size()) return false;
  for (std::size_t k = 0; k < a.formulas.size(); ++k)
    if (!alpha_equal(a.formulas[k], b.formulas[k])) return false;
  return true;
}

std::string alpha_key(const Expr& e, const std::vector<Symbol>& levels) {
  std::vector<std::string> env;
  for (const Symbol& s : levels) env.push_back(s.name);
  std::string out;
  key(e, env, out);
  return out;
}

}  // namespace epsk
