// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "epsilon.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace epsk {

namespace {

Expr rebuild(const Expr& e, std::vector<Expr> kids) {
  bool same = kids.size() == e.kids().size();
  for (std::size_t k = 0; same && k < kids.size(); ++k) same = kids[k].id() == e.kid(k).id();
  if (same) return e;
  switch (e.kind()) {
    case Kind::App: return Expr::app(e.symbol(), std::move(kids));
    case Kind::Pred: return Expr::pred(e.symbol(), std::move(kids));
    case Kind::Eps:
    case Kind::Forall:
    case Kind::Exists: return Expr::binder(e.kind(), e.symbol(), kids[0]);
    case Kind::Eq: return Expr::eq(kids[0], kids[1]);
    case Kind::Not: return Expr::neg(kids[0]);
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: return Expr::binary(e.kind(), kids[0], kids[1]);
    default: return e;
  }
}

bool has_free_bound(const Expr& e) {
  for (const Symbol& s : e.free())
    if (s.is_bound()) return true;
  return false;
}

class HasEps {
 public:
  bool operator()(const Expr& e) {
    auto it = memo_.find(e.id());
    if (it != memo_.end()) return it->second;
    bool r = e.kind() == Kind::Eps;
    for (const Expr& c : e.kids()) r = r || (*this)(c);
    memo_.emplace(e.id(), r);
    return r;
  }

 private:
  std::unordered_map<const void*, bool> memo_;
};

class Eliminator {
 public:
  Eliminator(ProofState st, EpsMode mode) : st_(std::move(st)), mode_(mode) {
    if (mode_ == EpsMode::Shared)
      for (const auto& [y, e] : st_.cc.entries()) shared_.emplace(entry_key(e), y);
  }

  Expr run(const Expr& e) {
    if (!has_eps_(e)) return e;
    bool context_free = !has_free_bound(e);
    if (context_free && mode_ == EpsMode::Shared) {
      auto it = memo_.find(e.id());
      if (it != memo_.end()) return it->second;
    }
    Expr out;
    if (e.kind() == Kind::Eps) {
      out = replace(e);
    } else if (e.is_binder()) {
      stack_.push_back(e.symbol().name);
      Expr b = run(e.body());
      stack_.pop_back();
      out = rebuild(e, {b});
    } else {
      std::vector<Expr> kids;
      kids.reserve(e.kids().size());
      for (const Expr& c : e.kids()) kids.push_back(run(c));
      out = rebuild(e, std::move(kids));
    }
    if (context_free && mode_ == EpsMode::Shared) memo_.emplace(e.id(), out);
    return out;
  }

  ProofState& state() { return st_; }

 private:
  static std::string entry_key(const CCEntry& e) {
    return std::to_string(e.lambda_prefix.size()) + ":" +
           alpha_key(e.eps_term(), e.lambda_prefix);
  }

  int level(const std::string& name) const {
    for (int k = static_cast<int>(stack_.size()) - 1; k >= 0; --k)
      if (stack_[k] == name) return k;
    return -1;
  }

  Expr replace(const Expr& e) {
    stack_.push_back(e.symbol().name);
    Expr body = run(e.body());
    stack_.pop_back();
    std::vector<Symbol> captured;
    for (const Symbol& s : body.free())
      if (s.is_bound() && s != e.symbol()) captured.push_back(s);
    std::stable_sort(captured.begin(), captured.end(), [&](const Symbol& a, const Symbol& b) {
      int la = level(a.name), lb = level(b.name);
      if (la < 0) la = 1 << 30;
      if (lb < 0) lb = 1 << 30;
      return la < lb;
    });
    CCEntry entry{captured, e.symbol(), body};
    std::vector<Expr> args;
    for (const Symbol& v : captured) args.push_back(Expr::sym(v));
    if (mode_ == EpsMode::Shared) {
      std::string key = entry_key(entry);
      auto it = shared_.find(key);
      if (it != shared_.end()) return Expr::app(it->second, std::move(args));
      Symbol z = add(entry);
      shared_.emplace(key, z);
      return Expr::app(z, std::move(args));
    }
    return Expr::app(add(entry), std::move(args));
  }

  Symbol add(const CCEntry& entry) {
    Symbol z = mint(st_, SymbolClass::FreeVar, entry.eps_bound.name, entry.sort(),
                    mode_ == EpsMode::Fresh);
    EdgeSet p;
    for (const Symbol& s : entry.body.free())
      if (s.is_free()) p.emplace(s, z);
    register_symbols(st_, entry.body);
    st_.vc = st_.vc.with_positive(p);
    st_.cc = st_.cc.with(z, entry);
    return z;
  }

  ProofState st_;
  EpsMode mode_;
  HasEps has_eps_;
  std::vector<std::string> stack_;
  std::map<std::string, Symbol> shared_;
  std::unordered_map<const void*, Expr> memo_;
};

}  // namespace

std::pair<Expr, ProofState> eliminate(const Expr& f, const ProofState& st, EpsMode mode) {
  ProofState st2 = st;
  register_symbols(st2, f);  // minted names must not clash with f's own
  Eliminator el(std::move(st2), mode);
  Expr out = el.run(f);
  CCCheck c = check_cc(el.state().cc, el.state().vc);
  if (!c) throw Error(ErrorKind::Internal, "elimination broke the choice condition: " + c.message);
  el.state().trace.push_back("eliminate " + to_string(f).substr(0, 200));
  return {out, el.state()};
}

// ---- reconstruction --------------------------------------------------------

namespace {

class Reconstructor {
 public:
  explicit Reconstructor(const ChoiceCondition& cc) : cc_(cc) {}

  Expr run(const Expr& e) {
    bool touches = false;
    for (const Symbol& s : e.free())
      if (s.is_var() && cc_.contains(s)) {
        touches = true;
        break;
      }
    if (!touches) return e;
    auto it = memo_.find(e.id());
    if (it != memo_.end()) return it->second;
    Expr out;
    if ((e.kind() == Kind::Sym || e.kind() == Kind::App) && cc_.contains(e.symbol())) {
      const CCEntry& entry = *cc_.find(e.symbol());
      if (entry.lambda_prefix.size() != e.kids().size())
        throw Error(ErrorKind::IllFormed, e.symbol().str() + " is applied to " +
                                              std::to_string(e.kids().size()) +
                                              " arguments but its entry binds " +
                                              std::to_string(entry.lambda_prefix.size()));
      Expr eps = resolved(e.symbol());
      if (entry.lambda_prefix.empty()) {
        out = eps;
      } else {
        std::map<Symbol, Expr> beta;
        for (std::size_t k = 0; k < entry.lambda_prefix.size(); ++k)
          beta.emplace(entry.lambda_prefix[k], run(e.kid(k)));
        out = replace_free(eps, beta, Renaming::AvoidCapture);
      }
    } else {
      std::vector<Expr> kids;
      for (const Expr& c : e.kids()) kids.push_back(run(c));
      out = rebuild(e, std::move(kids));
    }
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  Expr resolved(const Symbol& y) {
    auto it = done_.find(y);
    if (it != done_.end()) return it->second;
    if (!active_.insert(y).second)
      throw Error(ErrorKind::IllFormed, "choice condition is cyclic at " + y.str());
    const CCEntry& entry = *cc_.find(y);
    Expr out = Expr::eps(entry.eps_bound, run(entry.body));
    active_.erase(y);
    done_.emplace(y, out);
    return out;
  }

  const ChoiceCondition& cc_;
  std::map<Symbol, Expr> done_;
  SymbolSet active_;
  std::unordered_map<const void*, Expr> memo_;
};

}  // namespace

Expr reconstruct(const Expr& f, const ChoiceCondition& cc) {
  if (auto v = find_violation(VarCond(cc_dependence(cc), {})))
    throw Error(ErrorKind::IllFormed, "choice condition is not well-founded: " + v->describe());
  Reconstructor r(cc);
  return r.run(f);
}

// ---- quantifier elimination ------------------------------------------------

namespace {

class Measure {
 public:
  std::size_t depth(const Expr& e) {
    auto it = depth_.find(e.id());
    if (it != depth_.end()) return it->second;
    std::size_t d = 0;
    for (const Expr& c : e.kids()) d = std::max(d, depth(c));
    if (e.kind() == Kind::Eps) ++d;
    depth_.emplace(e.id(), d);
    return d;
  }

  std::uint64_t binders(const Expr& e) {
    auto it = binders_.find(e.id());
    if (it != binders_.end()) return it->second;
    std::uint64_t b = e.kind() == Kind::Eps ? 1 : 0;
    for (const Expr& c : e.kids()) b += binders(c);
    binders_.emplace(e.id(), b);
    return b;
  }

 private:
  std::unordered_map<const void*, std::size_t> depth_;
  std::unordered_map<const void*, std::uint64_t> binders_;
};

class Qelim {
 public:
  Expr run(const Expr& e) {
    auto it = memo_.find(e.id());
    if (it != memo_.end()) return it->second;
    Expr out;
    if (e.kind() == Kind::Eps) throw Error(ErrorKind::IllFormed, "qelim input contains eps terms");
    if (e.kind() == Kind::Forall || e.kind() == Kind::Exists) {
      Expr a = run(e.body());
      Expr chosen = Expr::eps(e.symbol(), e.kind() == Kind::Forall ? Expr::neg(a) : a);
      out = instantiate(a, e.symbol(), chosen, Renaming::AvoidCapture);
    } else {
      std::vector<Expr> kids;
      for (const Expr& c : e.kids()) kids.push_back(run(c));
      out = rebuild(e, std::move(kids));
    }
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  std::unordered_map<const void*, Expr> memo_;
};

// Row collection for the statistics table.
class Classes {
 public:
  explicit Classes(Measure& m) : m_(m) {}

  void walk(const Expr& e, std::vector<Symbol>& stack) {
    if (!has_eps_(e)) return;
    if (e.kind() == Kind::Eps) add(e, stack);
    if (e.is_binder()) {
      stack.push_back(e.symbol());
      walk(e.body(), stack);
      stack.pop_back();
      return;
    }
    for (const Expr& c : e.kids()) walk(c, stack);
  }

  std::string key_of(const Expr& e, const std::vector<Symbol>& stack) const {
    std::vector<Symbol> captured;
    for (const Symbol& s : e.free())
      if (s.is_bound()) captured.push_back(s);
    auto level = [&](const Symbol& s) {
      for (int k = static_cast<int>(stack.size()) - 1; k >= 0; --k)
        if (stack[k].name == s.name) return k;
      return 1 << 30;
    };
    std::stable_sort(captured.begin(), captured.end(),
                     [&](const Symbol& a, const Symbol& b) { return level(a) < level(b); });
    return std::to_string(captured.size()) + ":" + alpha_key(e, captured);
  }

  void add(const Expr& e, const std::vector<Symbol>& stack) {
    std::string k = key_of(e, stack);
    if (rows_.count(k)) return;
    rows_.emplace(k, Row{e.symbol().name, m_.depth(e), m_.binders(e), ""});
  }

  // Assigns names: binder + '_' + letter by increasing depth per binder.
  void name_rows() {
    std::map<std::string, std::vector<Row*>> groups;
    for (auto& [k, r] : rows_) groups[r.binder].push_back(&r);
    for (auto& [b, rs] : groups) {
      std::stable_sort(rs.begin(), rs.end(), [](const Row* x, const Row* y) {
        return x->depth != y->depth ? x->depth < y->depth : x->binders < y->binders;
      });
      for (std::size_t k = 0; k < rs.size(); ++k) {
        std::string suffix = k < 26 ? std::string(1, static_cast<char>('a' + k))
                                    : std::to_string(k);
        rs[k]->name = b + "_" + suffix;
      }
    }
  }

  struct Row {
    std::string binder;
    std::size_t depth;
    std::uint64_t binders;
    std::string name;
  };
  std::map<std::string, Row> rows_;

 private:
  Measure& m_;
  HasEps has_eps_;
};

}  // namespace

std::size_t eps_depth(const Expr& e) {
  Measure m;
  return m.depth(e);
}

std::uint64_t eps_binders(const Expr& e) {
  Measure m;
  return m.binders(e);
}

Expr qelim(const Expr& f) {
  if (!f.is_formula()) throw Error(ErrorKind::Sort, "qelim needs a formula");
  check_no_free_bound(f, "qelim input");
  Qelim q;
  return q.run(f);
}

QelimResult qelim_stats(const Expr& f, std::uint64_t table_limit) {
  QelimResult r;
  r.formula = qelim(f);
  Measure m;
  r.depth = m.depth(r.formula);
  r.binders = m.binders(r.formula);
  if (r.binders > table_limit) {
    r.table_complete = false;
    if (r.formula.kind() == Kind::Pred)
      for (const Expr& a : r.formula.kids())
        r.subterms.push_back({a.kind() == Kind::Eps ? a.symbol().name : to_string(a),
                              m.depth(a), m.binders(a)});
    return r;
  }
  Classes cl(m);
  std::vector<Symbol> stack;
  cl.walk(r.formula, stack);
  cl.name_rows();
  std::vector<const Classes::Row*> rows;
  for (const auto& [k, row] : cl.rows_) rows.push_back(&row);
  std::stable_sort(rows.begin(), rows.end(), [](const Classes::Row* a, const Classes::Row* b) {
    return a->depth != b->depth ? a->depth < b->depth : a->name < b->name;
  });
  for (const Classes::Row* row : rows) r.table.push_back({row->name, row->depth, row->binders});
  if (r.formula.kind() == Kind::Pred) {
    for (const Expr& a : r.formula.kids()) {
      if (a.kind() == Kind::Eps) {
        const Classes::Row& row = cl.rows_.at(cl.key_of(a, stack));
        r.subterms.push_back({row.name, row.depth, row.binders});
      } else {
        r.subterms.push_back({to_string(a), m.depth(a), m.binders(a)});
      }
    }
  }
  return r;
}

Symbol projection(std::size_t k) {
  return Symbol::constant("Proj" + std::to_string(k), Sort::curried(1));
}

namespace {

class ParallelQelim {
 public:
  Expr run(const Expr& e) {
    auto it = memo_.find(e.id());
    if (it != memo_.end()) return it->second;
    Expr out;
    if (e.kind() == Kind::Eps) throw Error(ErrorKind::IllFormed, "qelim input contains eps terms");
    if (e.kind() == Kind::Forall || e.kind() == Kind::Exists) {
      Kind q = e.kind();
      std::vector<Symbol> block;
      Expr a = e;
      while (a.kind() == q) {
        block.push_back(a.symbol());
        a = a.body();
      }
      a = run(a);
      out = eliminate_block(q, block, a);
    } else {
      std::vector<Expr> kids;
      for (const Expr& c : e.kids()) kids.push_back(run(c));
      out = rebuild(e, std::move(kids));
    }
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  static Expr eliminate_block(Kind q, const std::vector<Symbol>& block, const Expr& a) {
    // Repeated binders: only the innermost binding is visible in a.
    std::vector<Symbol> xs;
    for (std::size_t k = 0; k < block.size(); ++k) {
      bool shadowed = false;
      for (std::size_t j = k + 1; j < block.size(); ++j)
        if (block[j] == block[k]) shadowed = true;
      if (!shadowed) xs.push_back(block[k]);
    }
    if (xs.size() == 1) {
      Expr chosen = Expr::eps(xs[0], q == Kind::Forall ? Expr::neg(a) : a);
      return instantiate(a, xs[0], chosen, Renaming::AvoidCapture);
    }
    std::set<std::string> avoid = binder_names(a);
    for (const Symbol& s : a.free()) avoid.insert(s.name);
    std::string vname = "v";
    for (int k = 1; avoid.count(vname); ++k) vname = "v_" + std::to_string(k);
    Symbol v = Symbol::bound(vname);
    std::map<Symbol, Expr> to_v;
    for (std::size_t k = 0; k < xs.size(); ++k)
      to_v.emplace(xs[k], Expr::app(projection(k + 1), {Expr::sym(v)}));
    Expr av = replace_free(a, to_v, Renaming::AvoidCapture);
    Expr chosen = Expr::eps(v, q == Kind::Forall ? Expr::neg(av) : av);
    std::map<Symbol, Expr> to_choice;
    for (std::size_t k = 0; k < xs.size(); ++k)
      to_choice.emplace(xs[k], Expr::app(projection(k + 1), {chosen}));
    return replace_free(a, to_choice, Renaming::AvoidCapture);
  }

  std::unordered_map<const void*, Expr> memo_;
};

}  // namespace

Expr qelim_parallel(const Expr& f) {
  if (!f.is_formula()) throw Error(ErrorKind::Sort, "qelim needs a formula");
  check_no_free_bound(f, "qelim input");
  ParallelQelim q;
  return q.run(f);
}

}  // namespace epsk
