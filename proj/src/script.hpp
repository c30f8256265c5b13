// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EPSK_SCRIPT_HPP_
#define EPSK_SCRIPT_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "calculus.hpp"
#include "epsilon.hpp"
#include "error.hpp"
#include "parser.hpp"

namespace epsk {

enum class StepKind { Alpha, Beta, Gamma, DeltaMinus, DeltaPlus, InstVars, InstAtoms, Close };

struct ProofStep {
  StepKind kind = StepKind::Close;
  GoalId goal = 0;
  std::size_t index = 0;
  Expr term;                                        // gamma
  std::vector<std::pair<Symbol, Expr>> bindings;    // subst, asubst
  int line = 0;
};

const char* step_name(StepKind k);

// A script file mixes directives with steps:
//   problem <formula>    goal with one formula, eps terms eliminated on load
//   axiom <formula>      closed formula goals may be closed against
//   epsilon fresh|shared how eps terms of later problems are eliminated
// and the steps `gamma g i t`, `delta- g i`, `delta+ g i`, `alpha g i`,
// `beta g i`, `subst ?x := t, ...`, `asubst g !a := t, ...`, `close g`.
// `#` starts a comment.
struct ScriptFile {
  std::vector<std::pair<Expr, EpsMode>> problems;
  std::vector<Expr> axioms;
  std::vector<ProofStep> steps;
  EpsMode mode = EpsMode::Shared;  // in effect after the last line
};

ScriptFile parse_script(const std::string& text, Signature& sig,
                        EpsMode mode = EpsMode::Shared);

// Adds f as a new goal after eliminating its eps terms.
ProofState add_problem(const ProofState& st, const Expr& f, EpsMode mode, GoalId* id = nullptr);

ProofState apply_step(const ProofState& st, const ProofStep& step);

struct ScriptReport {
  bool success = false;  // every step applied and no goal left
  std::optional<std::size_t> failed_step;
  int failed_line = 0;
  std::optional<ErrorKind> error_kind;
  std::string error;
  ProofState state;
};

ScriptReport run_script(const ProofState& start, const std::vector<ProofStep>& steps);
ScriptReport run_script(const ScriptFile& file);

}  // namespace epsk

#endif  // EPSK_SCRIPT_HPP_
