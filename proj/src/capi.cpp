// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "epsk/epsk.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "choice.hpp"
#include "epsilon.hpp"
#include "parser.hpp"
#include "report.hpp"
#include "script.hpp"
#include "semantics.hpp"
#include "varcond.hpp"

struct epsk_signature {
  epsk::Signature sig;
};

struct epsk_state {
  epsk::Signature sig;
  epsk::ProofState st;
  epsk::EpsMode mode = epsk::EpsMode::Shared;
};

namespace {

using nlohmann::json;

thread_local std::string g_error;
thread_local epsk_error_kind g_kind = EPSK_ERR_NONE;

epsk_error_kind to_c(epsk::ErrorKind k) {
  switch (k) {
    case epsk::ErrorKind::Syntax: return EPSK_ERR_SYNTAX;
    case epsk::ErrorKind::Sort: return EPSK_ERR_SORT;
    case epsk::ErrorKind::Undeclared: return EPSK_ERR_UNDECLARED;
    case epsk::ErrorKind::IllFormed: return EPSK_ERR_ILL_FORMED;
    case epsk::ErrorKind::Rule: return EPSK_ERR_RULE;
    case epsk::ErrorKind::Substitution: return EPSK_ERR_SUBSTITUTION;
    case epsk::ErrorKind::Scale: return EPSK_ERR_SCALE;
    case epsk::ErrorKind::Input: return EPSK_ERR_INPUT;
    case epsk::ErrorKind::Internal: return EPSK_ERR_INTERNAL;
  }
  return EPSK_ERR_INTERNAL;
}

void clear_error() {
  g_error.clear();
  g_kind = EPSK_ERR_NONE;
}

void set_error(epsk_error_kind k, const std::string& msg) {
  g_kind = k;
  g_error = msg;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

epsk_status emit(const json& j, char** out) {
  if (out) *out = dup(j.dump(2));
  return EPSK_OK;
}

template <class F>
epsk_status guarded(F&& f) {
  clear_error();
  try {
    return f();
  } catch (const epsk::Error& e) {
    set_error(to_c(e.kind()), std::string(epsk::error_kind_name(e.kind())) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    set_error(EPSK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    set_error(EPSK_ERR_INTERNAL, e.what());
  }
  return EPSK_INPUT_ERROR;
}

void need(const void* p, const char* what) {
  if (!p) throw epsk::Error(epsk::ErrorKind::Input, std::string(what) + " must not be NULL");
}

epsk::EpsMode mode_of(epsk_eps_mode m) {
  return m == EPSK_EPS_FRESH ? epsk::EpsMode::Fresh : epsk::EpsMode::Shared;
}

// One formula per non-blank line; `#` starts a comment.
std::vector<epsk::Expr> formulas(const char* text, epsk::Signature& sig) {
  std::vector<epsk::Expr> out;
  if (!text) return out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    epsk::Parser p(raw, sig, line);
    epsk::Expr f = p.formula();
    p.expect_end();
    out.push_back(f);
  }
  return out;
}

epsk::Signature sig_or_open(epsk_signature* s) { return s ? s->sig : epsk::Signature(); }

}  // namespace

extern "C" {

const char* epsk_version(void) { return "0.1.0"; }
const char* epsk_last_error(void) { return g_error.c_str(); }
epsk_error_kind epsk_last_error_kind(void) { return g_kind; }
void epsk_string_free(char* s) { std::free(s); }

epsk_signature* epsk_signature_new(void) { return new (std::nothrow) epsk_signature(); }

epsk_status epsk_signature_parse(const char* text, epsk_signature** out) {
  return guarded([&] {
    need(text, "signature text");
    need(out, "out");
    auto* s = new epsk_signature();
    try {
      s->sig = epsk::Signature::parse(text);
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
    return EPSK_OK;
  });
}

void epsk_signature_free(epsk_signature* sig) { delete sig; }

epsk_status epsk_state_new(epsk_signature* sig, const char* problems, epsk_eps_mode mode,
                           epsk_state** out) {
  return guarded([&] {
    need(out, "out");
    auto* st = new epsk_state();
    try {
      st->sig = sig_or_open(sig);
      st->mode = mode_of(mode);
      for (const epsk::Expr& f : formulas(problems, st->sig))
        st->st = epsk::add_problem(st->st, f, st->mode);
    } catch (...) {
      delete st;
      throw;
    }
    *out = st;
    return EPSK_OK;
  });
}

epsk_status epsk_state_apply(epsk_state* st, const char* line) {
  return guarded([&] {
    need(st, "state");
    need(line, "line");
    epsk::Signature sig = st->sig;
    epsk::ScriptFile f = epsk::parse_script(line, sig, st->mode);
    epsk::ProofState next = st->st;
    for (const epsk::Expr& a : f.axioms) next = epsk::add_axiom(next, a);
    for (const auto& [p, m] : f.problems) next = epsk::add_problem(next, p, m);
    for (const epsk::ProofStep& s : f.steps) {
      try {
        next = epsk::apply_step(next, s);
      } catch (const epsk::Error& e) {
        set_error(to_c(e.kind()), std::string(epsk::step_name(s.kind)) + ": " + e.what());
        return EPSK_FAILED;
      }
    }
    st->st = std::move(next);
    st->sig = std::move(sig);
    st->mode = f.mode;
    return EPSK_OK;
  });
}

size_t epsk_state_open_goals(const epsk_state* st) { return st ? st->st.goals.size() : 0; }

epsk_status epsk_state_json(const epsk_state* st, char** out_json) {
  return guarded([&] {
    need(st, "state");
    return emit(epsk::state_json(st->st), out_json);
  });
}

void epsk_state_free(epsk_state* st) { delete st; }

epsk_status epsk_check(epsk_signature* sig, const char* problems, const char* script,
                       epsk_eps_mode mode, char** out_json) {
  return guarded([&] {
    epsk::Signature s = sig_or_open(sig);
    std::vector<epsk::Expr> ps = formulas(problems, s);
    epsk::ScriptFile file = epsk::parse_script(script ? script : "", s, mode_of(mode));
    epsk::ProofState st;
    for (const epsk::Expr& a : file.axioms) st = epsk::add_axiom(st, a);
    for (const epsk::Expr& f : ps) st = epsk::add_problem(st, f, mode_of(mode));
    for (const auto& [f, m] : file.problems) st = epsk::add_problem(st, f, m);
    if (st.goals.empty()) throw epsk::Error(epsk::ErrorKind::Input, "no problem given");
    epsk::ScriptReport r = epsk::run_script(st, file.steps);
    emit(epsk::report_json(r), out_json);
    if (r.failed_step) {
      set_error(to_c(*r.error_kind),
                "step " + std::to_string(*r.failed_step + 1) + " (line " +
                    std::to_string(r.failed_line) + ", " +
                    epsk::step_name(file.steps[*r.failed_step].kind) + ") failed: " + r.error);
      return EPSK_FAILED;
    }
    if (!r.success) {
      set_error(EPSK_ERR_NONE, std::to_string(r.state.goals.size()) + " goal(s) left open");
      return EPSK_FAILED;
    }
    return EPSK_OK;
  });
}

epsk_status epsk_eliminate(epsk_signature* sig, const char* text, epsk_eps_mode mode,
                           char** out_json) {
  return guarded([&] {
    epsk::Signature s = sig_or_open(sig);
    std::vector<epsk::Expr> fs = formulas(text, s);
    if (fs.empty()) throw epsk::Error(epsk::ErrorKind::Input, "no formula given");
    epsk::ProofState st;
    json out = json::array();
    for (const epsk::Expr& f : fs) {
      auto [g, st2] = epsk::eliminate(f, st, mode_of(mode));
      st = std::move(st2);
      out.push_back(epsk::to_string(g));
    }
    return emit({{"formulas", out},
                 {"cc", epsk::cc_json(st.cc)},
                 {"cc_dump", epsk::dump(st.cc)},
                 {"vc", epsk::vc_json(st.vc)}},
                out_json);
  });
}

epsk_status epsk_reconstruct(epsk_signature* sig, const char* text, const char* cc_text,
                             char** out_json) {
  return guarded([&] {
    need(cc_text, "choice condition");
    epsk::Signature s = sig_or_open(sig);
    epsk::ChoiceCondition cc = epsk::parse_cc(cc_text, s);
    std::vector<epsk::Expr> fs = formulas(text, s);
    if (fs.empty()) throw epsk::Error(epsk::ErrorKind::Input, "no formula given");
    json out = json::array();
    for (const epsk::Expr& f : fs) out.push_back(epsk::to_string(epsk::reconstruct(f, cc)));
    return emit({{"formulas", out}}, out_json);
  });
}

epsk_status epsk_qelim(epsk_signature* sig, const char* formula, int parallel, int with_formula,
                       char** out_json) {
  return guarded([&] {
    need(formula, "formula");
    epsk::Signature s = sig_or_open(sig);
    epsk::Expr f = epsk::parse_formula(formula, s);
    if (parallel) {
      epsk::Expr g = epsk::qelim_parallel(f);
      json j = {{"result_depth", epsk::eps_depth(g)}, {"result_binders", epsk::eps_binders(g)}};
      if (with_formula) j["formula"] = epsk::to_string(g);
      return emit(j, out_json);
    }
    return emit(epsk::qelim_json(epsk::qelim_stats(f), with_formula != 0), out_json);
  });
}

epsk_status epsk_validity(epsk_signature* sig, const char* goals, const char* structures_json,
                          const char* vc_text, const char* cc_text, int max_universe,
                          char** out_json) {
  return guarded([&] {
    need(structures_json, "structures");
    epsk::Signature s = sig_or_open(sig);
    std::vector<epsk::Sequent> gs;
    for (const epsk::Expr& f : formulas(goals, s)) gs.push_back(epsk::Sequent{{f}});
    if (gs.empty()) throw epsk::Error(epsk::ErrorKind::Input, "no goal given");
    epsk::VarCond vc = vc_text ? epsk::parse_varcond(vc_text) : epsk::VarCond();
    epsk::ChoiceCondition cc = cc_text ? epsk::parse_cc(cc_text, s) : epsk::ChoiceCondition();
    epsk::OracleLimits lim;
    if (max_universe > 0) {
      if (max_universe > lim.max_universe)
        throw epsk::Error(epsk::ErrorKind::Scale,
                          "--max-universe above the oracle limit " +
                              std::to_string(lim.max_universe));
      lim.max_universe = max_universe;
    }
    std::vector<epsk::Structure> ms = epsk::parse_structures(structures_json);
    json per = json::array();
    bool all = true;
    for (std::size_t k = 0; k < ms.size(); ++k) {
      bool v = epsk::is_valid(gs, cc, vc, ms[k], lim);
      all = all && v;
      per.push_back({{"index", k}, {"valid", v}});
    }
    epsk::Scope scope = epsk::scope_of(gs, cc);
    json vars = json::array(), atoms = json::array();
    for (const auto& x : scope.vars) vars.push_back(x.str());
    for (const auto& a : scope.atoms) atoms.push_back(a.str());
    emit({{"valid", all}, {"structures", per}, {"vars", vars}, {"atoms", atoms}}, out_json);
    if (!all) set_error(EPSK_ERR_NONE, "not valid in every structure");
    return all ? EPSK_OK : EPSK_FAILED;
  });
}

epsk_status epsk_vc_check(const char* vc_text, int emit_dot, char** out_json) {
  return guarded([&] {
    need(vc_text, "variable condition");
    epsk::VarCond vc = epsk::parse_varcond(vc_text);
    auto v = epsk::find_violation(vc);
    json j = {{"consistent", !v}, {"vc", epsk::vc_json(vc)}};
    if (v) {
      json cyc = json::array();
      for (const auto& x : v->cycle) cyc.push_back(x.str());
      j["violation"] = {{"cycle", cyc}, {"message", v->describe()}};
      if (v->n_edge) j["violation"]["n_edge"] = {v->n_edge->first.str(), v->n_edge->second.str()};
      set_error(EPSK_ERR_NONE, v->describe());
    }
    if (emit_dot) j["dot"] = epsk::to_dot(vc);
    emit(j, out_json);
    return v ? EPSK_FAILED : EPSK_OK;
  });
}

}  // extern "C"
