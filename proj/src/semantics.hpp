// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EPSK_SEMANTICS_HPP_
#define EPSK_SEMANTICS_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "choice.hpp"
#include "syntax.hpp"
#include "varcond.hpp"

namespace epsk {

// Finite first-order structure over elements 0..size()-1. External element
// ids from JSON are mapped to positions in `ids`.
class Structure {
 public:
  Structure() = default;
  explicit Structure(int size, int eps_default = 0);

  int size() const { return size_; }
  int eps_default() const { return eps_default_; }
  const std::vector<long long>& ids() const { return ids_; }

  void set_pred(const std::string& name, std::size_t arity, std::vector<char> table);
  void set_fun(const std::string& name, std::size_t arity, std::vector<int> table);
  void add_tuple(const std::string& pred, const std::vector<int>& args);

  bool pred(const std::string& name, const int* args, std::size_t n) const;
  int fun(const std::string& name, const int* args, std::size_t n) const;
  bool has_pred(const std::string& name) const { return preds_.count(name) != 0; }
  bool has_fun(const std::string& name) const { return funs_.count(name) != 0; }

  // {universe, preds: {P: [[..]]}, funs: {f: {"a,b": v}}, eps_default}
  static Structure from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  std::size_t offset(const int* args, std::size_t n) const;

  int size_ = 0;
  int eps_default_ = 0;
  std::vector<long long> ids_;
  std::map<std::string, std::pair<std::size_t, std::vector<char>>> preds_;
  std::map<std::string, std::pair<std::size_t, std::vector<int>>> funs_;
};

std::vector<Structure> parse_structures(const std::string& json_text);

// Values for free variables, free atoms and free bound atoms. Later bindings
// shadow earlier ones.
class Valuation {
 public:
  void set(const Symbol& s, int v);
  std::optional<int> get(const Symbol& s) const;
  void push(const Symbol& s, int v) { slots_.emplace_back(s, v); }
  void pop() { slots_.pop_back(); }
  const std::vector<std::pair<Symbol, int>>& slots() const { return slots_; }

 private:
  std::vector<std::pair<Symbol, int>> slots_;
};

// eps x. B denotes the least element satisfying B, else eps_default.
int eval_term(const Expr& t, const Structure& m, Valuation& d);
bool eval_formula(const Expr& f, const Structure& m, Valuation& d);

// A semantic valuation gives each free variable the atoms it may read and a
// table from their values to an element.
struct RaisingFunction {
  std::vector<Symbol> access;
  std::vector<int> table;  // mixed radix over access values, first atom most significant
  int apply(const Valuation& tau, int universe) const;
};

struct SemValuation {
  std::map<Symbol, RaisingFunction> fns;
};

Valuation epsilon_combine(const SemValuation& pi, const Valuation& tau, int universe);

// Free variables and free atoms the oracle has to range over.
struct Scope {
  std::vector<Symbol> vars;
  std::vector<Symbol> atoms;
};
Scope scope_of(const std::vector<Sequent>& goals, const ChoiceCondition& cc);

struct OracleLimits {
  int max_universe = 3;
  int max_atoms = 3;
  int max_vars = 3;
};

bool is_compatible(const SemValuation& pi, const ChoiceCondition& cc, const VarCond& vc,
                   const Structure& m, const Scope& scope);

// Every goal true for every atom valuation.
bool pi_valid(const std::vector<Sequent>& goals, const SemValuation& pi, const Structure& m,
              const Scope& scope);

// Calls `visit` with each compatible semantic valuation until it returns
// false. With `maximal`, every variable reads all atoms it may read; every
// compatible valuation behaves like one of these.
void enumerate_compatible(const ChoiceCondition& cc, const VarCond& vc, const Structure& m,
                          const Scope& scope, bool maximal,
                          const std::function<bool(const SemValuation&)>& visit);

// Exists a compatible pi such that all goals hold for all atom valuations.
// Backtracks over table entries instead of enumerating whole valuations.
bool is_valid(const std::vector<Sequent>& goals, const ChoiceCondition& cc, const VarCond& vc,
              const Structure& m, const OracleLimits& lim = {});

// For every compatible pi: g1 pi-valid implies g0 pi-valid.
bool reduces_to(const std::vector<Sequent>& g0, const std::vector<Sequent>& g1,
                const ChoiceCondition& cc, const VarCond& vc, const Structure& m,
                const OracleLimits& lim = {});

void check_scale(const Scope& scope, const Structure& m, const OracleLimits& lim);

}  // namespace epsk

#endif  // EPSK_SEMANTICS_HPP_
