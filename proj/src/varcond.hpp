// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EPSK_VARCOND_HPP_
#define EPSK_VARCOND_HPP_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "syntax.hpp"

namespace epsk {

using Edge = std::pair<Symbol, Symbol>;
using EdgeSet = std::set<Edge>;

// A pair (P, N). P edges run from a free variable or free atom to a free
// variable, N edges from a free variable to a free atom.
class VarCond {
 public:
  VarCond() = default;
  VarCond(EdgeSet p, EdgeSet n);  // validates edge classes

  const EdgeSet& positive() const { return p_; }
  const EdgeSet& negative() const { return n_; }

  VarCond with_positive(const EdgeSet& add) const;
  VarCond with_negative(const EdgeSet& add) const;
  // Free symbols mentioned by some edge.
  SymbolSet nodes() const;

  friend bool operator==(const VarCond& a, const VarCond& b) {
    return a.p_ == b.p_ && a.n_ == b.n_;
  }

 private:
  EdgeSet p_;
  EdgeSet n_;
};

// Why a variable condition is inconsistent: a cycle of P edges, or an N edge
// (x, a) together with a P path from a back to x. `cycle` lists the nodes in
// order, starting and ending at the same symbol.
struct Violation {
  std::vector<Symbol> cycle;
  std::optional<Edge> n_edge;
  std::string describe() const;
};

std::optional<Violation> find_violation(const VarCond& vc);
bool is_consistent(const VarCond& vc);

// {(z, x) | x in dom s, z free var or free atom of s(x)}
EdgeSet dependence(const Substitution& s);
VarCond sigma_update(const VarCond& vc, const Substitution& s);
bool is_pn_substitution(const VarCond& vc, const Substitution& s);

EdgeSet transitive_closure(const EdgeSet& r);
// Reflexive-transitive predecessors of `targets` under r.
SymbolSet reaching(const EdgeSet& r, const SymbolSet& targets);
// Targets reachable from `sources` in one or more steps.
SymbolSet reachable_plus(const EdgeSet& r, const SymbolSet& sources);

bool is_weak_extension(const VarCond& base, const VarCond& ext);

// P edges solid, N edges dashed.
std::string to_dot(const VarCond& vc);

// One edge per line: `P <from> <to>` or `N <from> <to>`; `#` starts a comment.
VarCond parse_varcond(const std::string& text);
std::string format_varcond(const VarCond& vc);

}  // namespace epsk

#endif  // EPSK_VARCOND_HPP_
