// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EPSK_CHOICE_HPP_
#define EPSK_CHOICE_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parser.hpp"
#include "syntax.hpp"
#include "varcond.hpp"

namespace epsk {

// \v0. ... \v(l-1). eps v. body
struct CCEntry {
  std::vector<Symbol> lambda_prefix;
  Symbol eps_bound;
  Expr body;

  // The eps term with the lambda prefix left open.
  Expr eps_term() const { return Expr::eps(eps_bound, body); }
  // Sort the choice variable must have.
  Sort sort() const;
};

bool alpha_equal(const CCEntry& a, const CCEntry& b);

class ChoiceCondition {
 public:
  ChoiceCondition() = default;

  const std::map<Symbol, CCEntry>& entries() const { return entries_; }
  const CCEntry* find(const Symbol& y) const;
  bool contains(const Symbol& y) const { return entries_.count(y) != 0; }
  std::size_t size() const { return entries_.size(); }
  SymbolSet domain() const;

  ChoiceCondition with(const Symbol& y, CCEntry e) const;
  ChoiceCondition without(const SymbolSet& ys) const;

 private:
  std::map<Symbol, CCEntry> entries_;
};

struct CCCheck {
  bool ok = true;
  int item = 0;  // 0: variable condition inconsistent, 1..3: entry condition
  std::optional<Symbol> offender;
  std::string message;
  explicit operator bool() const { return ok; }
};

CCCheck check_cc(const ChoiceCondition& cc, const VarCond& vc);

// Smallest P making cc a choice condition: Vfree(C(y)) x {y}.
EdgeSet cc_dependence(const ChoiceCondition& cc);

// all v0 ... all v(l-1). (ex v. B -> B{v -> y(v0, ..., v(l-1))})
Expr q_formula(const ChoiceCondition& cc, const Symbol& y);

// Applies s to the bodies of entries outside dom s and drops the others; the
// variable condition gets the sigma-update. Throws unless s is a
// (P,N)-substitution.
std::pair<ChoiceCondition, VarCond> extended_sigma_update(const ChoiceCondition& cc,
                                                          const VarCond& vc,
                                                          const Substitution& s);

bool is_extended_extension(const ChoiceCondition& cc, const VarCond& vc,
                           const ChoiceCondition& cc2, const VarCond& vc2);

// One line per entry: `?y := \v0. \v1. eps v. <formula>`.
std::string format_entry(const Symbol& y, const CCEntry& e);
std::string dump(const ChoiceCondition& cc);
ChoiceCondition parse_cc(const std::string& text, Signature& sig);

}  // namespace epsk

#endif  // EPSK_CHOICE_HPP_
