/* Copyright 2026 The epsk Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the epsk proof kernel. Results are JSON strings owned by the
 * caller (release with epsk_string_free); pass NULL for out_json to get only
 * the status. On a non-zero status the message is available from
 * epsk_last_error() until the next call on the same thread.
 */
#ifndef EPSK_EPSK_H_
#define EPSK_EPSK_H_

#include <stddef.h>

#if defined(_WIN32)
#define EPSK_API __declspec(dllexport)
#else
#define EPSK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  EPSK_OK = 0,
  EPSK_FAILED = 1, /* refuted, inconsistent, or goals left open */
  EPSK_INPUT_ERROR = 2
} epsk_status;

typedef enum {
  EPSK_ERR_NONE = 0,
  EPSK_ERR_SYNTAX,
  EPSK_ERR_SORT,
  EPSK_ERR_UNDECLARED,
  EPSK_ERR_ILL_FORMED,
  EPSK_ERR_RULE,
  EPSK_ERR_SUBSTITUTION,
  EPSK_ERR_SCALE,
  EPSK_ERR_INPUT,
  EPSK_ERR_INTERNAL
} epsk_error_kind;

typedef enum { EPSK_EPS_SHARED = 0, EPSK_EPS_FRESH = 1 } epsk_eps_mode;

typedef struct epsk_signature epsk_signature;
typedef struct epsk_state epsk_state;

EPSK_API const char* epsk_version(void);
EPSK_API const char* epsk_last_error(void);
EPSK_API epsk_error_kind epsk_last_error_kind(void);
EPSK_API void epsk_string_free(char* s);

/* Open signature: capitalized names are declared on first use. */
EPSK_API epsk_signature* epsk_signature_new(void);
/* Closed signature from `const F : i -> i` / `pred P : i^2` lines. */
EPSK_API epsk_status epsk_signature_parse(const char* text, epsk_signature** out);
EPSK_API void epsk_signature_free(epsk_signature* sig);

/* Interactive proof state. `problems` holds one formula per line (may be
 * NULL or empty); eps terms are eliminated on load. */
EPSK_API epsk_status epsk_state_new(epsk_signature* sig, const char* problems,
                                    epsk_eps_mode mode, epsk_state** out);
/* One script line: a step or a problem/axiom/epsilon directive. */
EPSK_API epsk_status epsk_state_apply(epsk_state* st, const char* line);
EPSK_API size_t epsk_state_open_goals(const epsk_state* st);
EPSK_API epsk_status epsk_state_json(const epsk_state* st, char** out_json);
EPSK_API void epsk_state_free(epsk_state* st);

/* Replays a script on top of `problems`. EPSK_OK iff every goal is closed. */
EPSK_API epsk_status epsk_check(epsk_signature* sig, const char* problems, const char* script,
                                epsk_eps_mode mode, char** out_json);

/* {formulas, cc, cc_dump, vc} */
EPSK_API epsk_status epsk_eliminate(epsk_signature* sig, const char* formulas,
                                    epsk_eps_mode mode, char** out_json);
/* {formulas} with choice variables of `cc_text` expanded */
EPSK_API epsk_status epsk_reconstruct(epsk_signature* sig, const char* formulas,
                                      const char* cc_text, char** out_json);
/* {result_depth, result_binders, subterms, table, ...}. `parallel` removes
 * homogeneous quantifier blocks at once. */
EPSK_API epsk_status epsk_qelim(epsk_signature* sig, const char* formula, int parallel,
                                int with_formula, char** out_json);

/* Goals (one formula per line) checked in every structure. EPSK_OK iff valid
 * in all of them. vc_text and cc_text may be NULL. */
EPSK_API epsk_status epsk_validity(epsk_signature* sig, const char* goals,
                                   const char* structures_json, const char* vc_text,
                                   const char* cc_text, int max_universe, char** out_json);

/* {consistent, violation?, dot?}. EPSK_OK iff consistent. */
EPSK_API epsk_status epsk_vc_check(const char* vc_text, int emit_dot, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* EPSK_EPSK_H_ */
