// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EPSK_SYNTAX_HPP_
#define EPSK_SYNTAX_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace epsk {

// Sorts are the base sort "i" (or a named base) and curried function sorts.
class Sort {
 public:
  Sort();  // the base sort i
  static Sort base(const std::string& name);
  static Sort fun(const Sort& arg, const Sort& result);
  // i -> i -> ... -> i with `arity` arrows.
  static Sort curried(std::size_t arity);
  // i -> ... -> o, the sort given to predicate symbols.
  static Sort relation(std::size_t arity);

  bool is_base() const { return rep_->arg == nullptr; }
  const std::string& base_name() const { return rep_->name; }
  Sort arg() const;
  Sort result() const;
  std::size_t arity() const;
  std::string str() const;

  friend bool operator==(const Sort& a, const Sort& b);
  friend bool operator!=(const Sort& a, const Sort& b) { return !(a == b); }

 private:
  struct Rep {
    std::string name;
    std::shared_ptr<const Rep> arg;
    std::shared_ptr<const Rep> result;
  };
  explicit Sort(std::shared_ptr<const Rep> r) : rep_(std::move(r)) {}
  static bool equal(const Rep* a, const Rep* b);
  static std::string render(const Rep* r);

  std::shared_ptr<const Rep> rep_;
};

enum class SymbolClass : std::uint8_t { FreeVar, FreeAtom, BoundAtom, Constant };

// Class masks for free_symbols().
enum : unsigned {
  kFreeVars = 1u,
  kFreeAtoms = 2u,
  kBoundAtoms = 4u,
  kFreeSymbols = kFreeVars | kFreeAtoms,
};

unsigned class_bit(SymbolClass c);

// Identity is (class, name); the sort rides along.
struct Symbol {
  SymbolClass cls = SymbolClass::BoundAtom;
  std::string name;
  Sort sort;

  static Symbol var(std::string name, Sort s = Sort());
  static Symbol atom(std::string name, Sort s = Sort());
  static Symbol bound(std::string name, Sort s = Sort());
  static Symbol constant(std::string name, Sort s = Sort());

  bool is_var() const { return cls == SymbolClass::FreeVar; }
  bool is_atom() const { return cls == SymbolClass::FreeAtom; }
  bool is_bound() const { return cls == SymbolClass::BoundAtom; }
  bool is_constant() const { return cls == SymbolClass::Constant; }
  bool is_free() const { return is_var() || is_atom(); }

  // Printed form: ?x, !x, x, C.
  std::string str() const;
};

bool operator==(const Symbol& a, const Symbol& b);
bool operator!=(const Symbol& a, const Symbol& b);
bool operator<(const Symbol& a, const Symbol& b);

using SymbolSet = std::set<Symbol>;

enum class Kind : std::uint8_t {
  // terms
  Sym,
  App,
  Eps,
  // formulas
  True,
  False,
  Pred,
  Eq,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
};

class Expr;

namespace detail {
struct ExprNode;
}

// Immutable, shared term or formula. Copies are cheap.
class Expr {
 public:
  Expr() = default;

  static Expr sym(const Symbol& s);
  static Expr app(const Symbol& head, std::vector<Expr> args);
  static Expr eps(const Symbol& bound, const Expr& body);
  static Expr top();
  static Expr bottom();
  static Expr pred(const Symbol& head, std::vector<Expr> args);
  static Expr eq(const Expr& lhs, const Expr& rhs);
  static Expr neg(const Expr& a);
  static Expr conj(const Expr& a, const Expr& b);
  static Expr disj(const Expr& a, const Expr& b);
  static Expr implies(const Expr& a, const Expr& b);
  static Expr iff(const Expr& a, const Expr& b);
  static Expr forall(const Symbol& v, const Expr& body);
  static Expr exists(const Symbol& v, const Expr& body);
  static Expr binary(Kind k, const Expr& a, const Expr& b);
  static Expr binder(Kind k, const Symbol& v, const Expr& body);

  explicit operator bool() const { return node_ != nullptr; }
  Kind kind() const;
  bool is_term() const;
  bool is_formula() const { return !is_term(); }
  bool is_binder() const;
  bool is_binary() const;

  // Sym: the symbol. App, Pred: the head. Eps, Forall, Exists: the binder.
  const Symbol& symbol() const;
  // App, Pred: arguments. Eq: lhs, rhs. Not: operand. Binary: both sides.
  // Binders: the body.
  const std::vector<Expr>& kids() const;
  const Expr& kid(std::size_t i) const { return kids()[i]; }
  const Expr& body() const { return kids()[0]; }

  // Free variables, free atoms and free bound atoms, sorted. Constants are
  // not recorded.
  const std::vector<Symbol>& free() const;
  bool has_free(const Symbol& s) const;

  const void* id() const { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const detail::ExprNode> n) : node_(std::move(n)) {}
  static Expr make(Kind k, Symbol s, std::vector<Expr> kids);

  std::shared_ptr<const detail::ExprNode> node_;
};

namespace detail {
struct ExprNode {
  Kind kind;
  Symbol symbol;
  std::vector<Expr> kids;
  std::vector<Symbol> free;
};
}  // namespace detail

inline Kind Expr::kind() const { return node_->kind; }
inline const Symbol& Expr::symbol() const { return node_->symbol; }
inline const std::vector<Expr>& Expr::kids() const { return node_->kids; }
inline const std::vector<Symbol>& Expr::free() const { return node_->free; }

using Term = Expr;
using Formula = Expr;

// A disjunctive list of formulas.
struct Sequent {
  std::vector<Expr> formulas;
};

// A finite map over free variables only or free atoms only.
class Substitution {
 public:
  Substitution() = default;
  // Throws on mixed domains, non-free domain symbols, ill-sorted or
  // non-closed range terms.
  static Substitution make(const std::vector<std::pair<Symbol, Expr>>& bindings);

  bool empty() const { return map_.empty(); }
  bool over_vars() const;
  bool over_atoms() const;
  const std::map<Symbol, Expr>& bindings() const { return map_; }
  const Expr* find(const Symbol& s) const;
  std::vector<Symbol> domain() const;

 private:
  std::map<Symbol, Expr> map_;
};

SymbolSet free_symbols(const Expr& e, unsigned mask);
SymbolSet free_symbols(const Sequent& s, unsigned mask);
// Constants occurring anywhere (heads included).
SymbolSet constants(const Expr& e);
// Names of every binder occurring in e.
std::set<std::string> binder_names(const Expr& e);

Sort sort_of(const Expr& term);

// How binders are renamed when a replacement would end up below them.
enum class Renaming {
  AvoidCapture,    // rename only if a free bound atom would be captured
  AvoidShadowing,  // also rename if the binder name occurs in the inserted term
};

// Capture-avoiding simultaneous replacement of free occurrences. Keys may be
// of any non-constant class.
Expr replace_free(const Expr& e, const std::map<Symbol, Expr>& m,
                  Renaming r = Renaming::AvoidShadowing);
// body{v -> t}
Expr instantiate(const Expr& body, const Symbol& v, const Expr& t,
                 Renaming r = Renaming::AvoidCapture);

Expr apply_subst(const Expr& e, const Substitution& s);
Sequent apply_subst(const Sequent& s, const Substitution& sub);

bool alpha_equal(const Expr& a, const Expr& b);
bool alpha_equal(const Sequent& a, const Sequent& b);

// Canonical text up to renaming of bound atoms. `levels` pre-binds the given
// atoms as if by enclosing binders, outermost first.
std::string alpha_key(const Expr& e, const std::vector<Symbol>& levels = {});

// Throws IllFormed if e has a free bound atom.
void check_no_free_bound(const Expr& e, const char* what);

std::string to_string(const Expr& e);
std::string to_string(const Sequent& s);

}  // namespace epsk

#endif  // EPSK_SYNTAX_HPP_
