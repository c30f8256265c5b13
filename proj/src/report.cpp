// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "report.hpp"

namespace epsk {

using nlohmann::json;

namespace {

json edges(const EdgeSet& es) {
  json a = json::array();
  for (const auto& [x, y] : es) a.push_back({x.str(), y.str()});
  return a;
}

json stats(const std::vector<SubtermStat>& v) {
  json a = json::array();
  for (const SubtermStat& s : v)
    a.push_back({{"name", s.name}, {"depth", s.depth}, {"binders", s.binders}});
  return a;
}

}  // namespace

json vc_json(const VarCond& vc) {
  return {{"P", edges(vc.positive())}, {"N", edges(vc.negative())}};
}

json cc_json(const ChoiceCondition& cc) {
  json a = json::array();
  for (const auto& [y, e] : cc.entries()) {
    json lam = json::array();
    for (const Symbol& v : e.lambda_prefix) lam.push_back(v.name);
    a.push_back({{"var", y.str()},
                 {"lambda", lam},
                 {"eps", to_string(e.eps_term())},
                 {"entry", format_entry(y, e)}});
  }
  return a;
}

json state_json(const ProofState& st) {
  json goals = json::array();
  for (const auto& [id, s] : st.goals) {
    json fs = json::array();
    for (const Expr& f : s.formulas) fs.push_back(to_string(f));
    goals.push_back({{"id", id}, {"formulas", fs}});
  }
  json axioms = json::array();
  for (const Expr& a : st.axioms) axioms.push_back(to_string(a));
  return {{"goals", goals},   {"vc", vc_json(st.vc)},  {"cc", cc_json(st.cc)},
          {"axioms", axioms}, {"closed", st.closed},   {"trace", st.trace}};
}

json report_json(const ScriptReport& r) {
  json j = state_json(r.state);
  j["success"] = r.success;
  if (r.failed_step) {
    j["failed_step"] = *r.failed_step;
    j["failed_line"] = r.failed_line;
    j["error_kind"] = error_kind_name(*r.error_kind);
    j["error"] = r.error;
  }
  return j;
}

json qelim_json(const QelimResult& q, bool with_formula) {
  json j = {{"result_depth", q.depth},
            {"result_binders", q.binders},
            {"subterms", stats(q.subterms)},
            {"table", stats(q.table)},
            {"table_complete", q.table_complete}};
  if (with_formula) j["formula"] = to_string(q.formula);
  return j;
}

}  // namespace epsk
