// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "script.hpp"

#include <sstream>

namespace epsk {

const char* step_name(StepKind k) {
  switch (k) {
    case StepKind::Alpha: return "alpha";
    case StepKind::Beta: return "beta";
    case StepKind::Gamma: return "gamma";
    case StepKind::DeltaMinus: return "delta-";
    case StepKind::DeltaPlus: return "delta+";
    case StepKind::InstVars: return "subst";
    case StepKind::InstAtoms: return "asubst";
    case StepKind::Close: return "close";
  }
  return "?";
}

namespace {

std::size_t read_number(std::istringstream& in, int line, const char* what) {
  std::string w;
  in >> w;
  if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos)
    throw SyntaxError(line, 1, std::string("expected ") + what + ", got '" + w + "'");
  return std::stoul(w);
}

std::string rest_of(std::istringstream& in) {
  std::string r;
  std::getline(in, r);
  return r;
}

}  // namespace

ScriptFile parse_script(const std::string& text, Signature& sig, EpsMode mode) {
  ScriptFile out;
  std::istringstream lines(text);
  std::string raw;
  int line = 0;
  while (std::getline(lines, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream in(raw);
    std::string kw;
    if (!(in >> kw)) continue;
    if (kw == "problem" || kw == "axiom") {
      Parser p(rest_of(in), sig, line);
      Expr f = p.formula();
      p.expect_end();
      if (kw == "problem")
        out.problems.emplace_back(f, mode);
      else
        out.axioms.push_back(f);
      continue;
    }
    if (kw == "epsilon") {
      std::string m;
      in >> m;
      if (m == "fresh")
        mode = EpsMode::Fresh;
      else if (m == "shared")
        mode = EpsMode::Shared;
      else
        throw SyntaxError(line, 1, "epsilon mode must be fresh or shared, got '" + m + "'");
      continue;
    }
    ProofStep s;
    s.line = line;
    if (kw == "gamma") {
      s.kind = StepKind::Gamma;
      s.goal = static_cast<GoalId>(read_number(in, line, "goal id"));
      s.index = read_number(in, line, "formula index");
      Parser p(rest_of(in), sig, line);
      s.term = p.term();
      p.expect_end();
    } else if (kw == "delta-" || kw == "delta+" || kw == "alpha" || kw == "beta") {
      s.kind = kw == "delta-"   ? StepKind::DeltaMinus
               : kw == "delta+" ? StepKind::DeltaPlus
               : kw == "alpha"  ? StepKind::Alpha
                                : StepKind::Beta;
      s.goal = static_cast<GoalId>(read_number(in, line, "goal id"));
      s.index = read_number(in, line, "formula index");
    } else if (kw == "close") {
      s.kind = StepKind::Close;
      s.goal = static_cast<GoalId>(read_number(in, line, "goal id"));
    } else if (kw == "subst" || kw == "asubst") {
      s.kind = kw == "subst" ? StepKind::InstVars : StepKind::InstAtoms;
      if (s.kind == StepKind::InstAtoms) s.goal = static_cast<GoalId>(read_number(in, line, "goal id"));
      Parser p(rest_of(in), sig, line);
      s.bindings = parse_bindings(p);
      p.expect_end();
    } else {
      throw SyntaxError(line, 1, "unknown step '" + kw + "'");
    }
    std::string extra;
    if (s.kind != StepKind::Gamma && s.kind != StepKind::InstVars &&
        s.kind != StepKind::InstAtoms && (in >> extra))
      throw SyntaxError(line, 1, "trailing '" + extra + "'");
    out.steps.push_back(std::move(s));
  }
  out.mode = mode;
  return out;
}

ProofState add_problem(const ProofState& st, const Expr& f, EpsMode mode, GoalId* id) {
  auto [g, st2] = eliminate(f, st, mode);
  return add_goal(st2, Sequent{{g}}, id);
}

namespace {

Substitution resolve(const ProofState& st, const std::vector<std::pair<Symbol, Expr>>& bs) {
  std::vector<std::pair<Symbol, Expr>> out;
  for (const auto& [x, t] : bs) {
    Symbol k = x;
    if (auto known = lookup(st, x))
      k = *known;
    else
      k.sort = sort_of(t);
    out.emplace_back(k, t);
  }
  return Substitution::make(out);
}

}  // namespace

ProofState apply_step(const ProofState& st, const ProofStep& s) {
  switch (s.kind) {
    case StepKind::Gamma: return gamma(st, s.goal, s.index, s.term);
    case StepKind::DeltaMinus: return delta_minus(st, s.goal, s.index);
    case StepKind::DeltaPlus: return delta_plus(st, s.goal, s.index);
    case StepKind::Alpha: return alpha_beta(st, s.goal, s.index, Split::Alpha);
    case StepKind::Beta: return alpha_beta(st, s.goal, s.index, Split::Beta);
    case StepKind::Close: return close(st, s.goal);
    case StepKind::InstVars: return instantiate_vars(st, resolve(st, s.bindings));
    case StepKind::InstAtoms:
      goal(st, s.goal);
      return instantiate_atoms(st, s.goal, resolve(st, s.bindings));
  }
  throw Error(ErrorKind::Internal, "unknown step kind");
}

ScriptReport run_script(const ProofState& start, const std::vector<ProofStep>& steps) {
  ScriptReport r;
  r.state = start;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    try {
      r.state = apply_step(r.state, steps[k]);
    } catch (const Error& e) {
      r.failed_step = k;
      r.failed_line = steps[k].line;
      r.error_kind = e.kind();
      r.error = e.what();
      return r;
    }
  }
  r.success = r.state.goals.empty();
  return r;
}

ScriptReport run_script(const ScriptFile& file) {
  ProofState st;
  for (const Expr& a : file.axioms) st = add_axiom(st, a);
  for (const auto& [f, mode] : file.problems) st = add_problem(st, f, mode);
  return run_script(st, file.steps);
}

}  // namespace epsk
