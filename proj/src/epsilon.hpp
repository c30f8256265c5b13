// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EPSK_EPSILON_HPP_
#define EPSK_EPSILON_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "calculus.hpp"
#include "choice.hpp"
#include "syntax.hpp"

namespace epsk {

enum class EpsMode {
  Shared,  // alpha-equal eps terms get one choice variable
  Fresh,   // every occurrence gets its own
};

// Replaces eps terms innermost first by applied free variables
// ?z(v0, ..., v(l-1)), where v0.. are the enclosing bound atoms the term
// captures, outermost first. Entries go to the choice condition of the
// returned state and Vfree(body) x {?z} to its P.
std::pair<Expr, ProofState> eliminate(const Expr& f, const ProofState& st,
                                      EpsMode mode = EpsMode::Shared);
inline std::pair<Expr, ProofState> eliminate_fresh(const Expr& f, const ProofState& st) {
  return eliminate(f, st, EpsMode::Fresh);
}

// Expands choice variables back into eps terms and beta-reduces.
Expr reconstruct(const Expr& f, const ChoiceCondition& cc);

std::size_t eps_depth(const Expr& e);
std::uint64_t eps_binders(const Expr& e);

struct SubtermStat {
  std::string name;
  std::size_t depth;
  std::uint64_t binders;
};

struct QelimResult {
  Expr formula;
  std::size_t depth = 0;
  std::uint64_t binders = 0;
  // Arguments of the result when it is a single atom.
  std::vector<SubtermStat> subterms;
  // One row per eps term up to renaming, ordered by depth. Named after the
  // binder with a letter per depth rank: z_a, z_b, ...
  std::vector<SubtermStat> table;
  bool table_complete = true;
};

// Inside-out elimination: ex x. A => A{x -> eps x. A},
// all x. A => A{x -> eps x. ~A}. The input must be closed and eps-free.
Expr qelim(const Expr& f);
QelimResult qelim_stats(const Expr& f, std::uint64_t table_limit = 200000);

// Maximal blocks of equal quantifiers are removed together through a tuple
// choice: all x1..xk. A => A[Projk(v_a)/xk] with v_a = eps v. ~A[Projk(v)/xk].
// Blocks of length one are handled as in qelim.
Expr qelim_parallel(const Expr& f);
Symbol projection(std::size_t k);

}  // namespace epsk

#endif  // EPSK_EPSILON_HPP_
