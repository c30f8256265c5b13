// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EPSK_CALCULUS_HPP_
#define EPSK_CALCULUS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "choice.hpp"
#include "syntax.hpp"
#include "varcond.hpp"

namespace epsk {

using GoalId = int;

// A proof state is a value: every rule below returns a new one. The choice
// condition is kept a (P,N)-choice condition throughout.
struct ProofState {
  std::map<GoalId, Sequent> goals;
  VarCond vc;
  ChoiceCondition cc;
  // Closed formulas a goal may be closed against.
  std::vector<Expr> axioms;
  unsigned fresh_counter = 0;
  GoalId next_goal = 0;
  // Every free variable and free atom the state has seen.
  SymbolSet known;
  std::vector<GoalId> closed;
  std::vector<std::string> trace;
};

ProofState make_state(const std::vector<Sequent>& goals);
ProofState add_goal(const ProofState& st, const Sequent& s, GoalId* id = nullptr);
ProofState add_axiom(const ProofState& st, const Expr& f);

// Registers the free variables and atoms of e.
void register_symbols(ProofState& st, const Expr& e);
// A name not used by any registered symbol. The stem of `base` itself when
// free and `numbered` is off, else the stem with the next counter value.
Symbol mint(ProofState& st, SymbolClass cls, const std::string& base, const Sort& sort,
            bool numbered = false);
// The registered symbol with this class and name, if any (carries its sort).
std::optional<Symbol> lookup(const ProofState& st, const Symbol& s);

const Sequent& goal(const ProofState& st, GoalId g);

// gamma on (ex y. A) or ~(all y. A) at position idx; the principal formula
// stays in the sequent.
ProofState gamma(const ProofState& st, GoalId g, std::size_t idx, const Expr& t);
// delta- on (all x. A) or ~(ex x. A) with a fresh free atom.
ProofState delta_minus(const ProofState& st, GoalId g, std::size_t idx);
// delta+ on (all x. A) or ~(ex x. A) with a fresh free variable.
ProofState delta_plus(const ProofState& st, GoalId g, std::size_t idx);

enum class Split { Any, Alpha, Beta };
ProofState alpha_beta(const ProofState& st, GoalId g, std::size_t idx,
                      Split expect = Split::Any);

// Closes a goal holding A and ~A, t = t, true, ~false, or an axiom.
ProofState close(const ProofState& st, GoalId g);
bool closable(const ProofState& st, GoalId g);

struct Obligations {
  SymbolSet m;        // dom s meets dom C
  SymbolSet o;        // those that reach a goal variable
  SymbolSet o_prime;  // choice variables depending only on M \ O
};
Obligations obligations(const ProofState& st, const Substitution& s);

// Global instantiation of free variables: applies s to every goal, performs
// the extended sigma-update and adds (Q_C(y))s for each y in O.
ProofState instantiate_vars(const ProofState& st, const Substitution& s);
// Local instantiation of free atoms in one goal; needs every
// (free variable of the goal, atom) pair in N.
ProofState instantiate_atoms(const ProofState& st, GoalId g, const Substitution& nu);

// Adds edges; fails if the result is not consistent.
ProofState extend_vc(const ProofState& st, const EdgeSet& p, const EdgeSet& n);

}  // namespace epsk

#endif  // EPSK_CALCULUS_HPP_
