// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EPSK_REPORT_HPP_
#define EPSK_REPORT_HPP_

#include <json.hpp>

#include "calculus.hpp"
#include "epsilon.hpp"
#include "script.hpp"
#include "varcond.hpp"

namespace epsk {

nlohmann::json vc_json(const VarCond& vc);
nlohmann::json cc_json(const ChoiceCondition& cc);
nlohmann::json state_json(const ProofState& st);
nlohmann::json report_json(const ScriptReport& r);
// {result_depth, result_binders, subterms, table, table_complete}
nlohmann::json qelim_json(const QelimResult& q, bool with_formula);

}  // namespace epsk

#endif  // EPSK_REPORT_HPP_
