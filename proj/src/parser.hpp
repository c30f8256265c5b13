// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EPSK_PARSER_HPP_
#define EPSK_PARSER_HPP_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "syntax.hpp"

namespace epsk {

// Constant declarations. An open signature declares capitalized names on
// first use; a closed one rejects them.
class Signature {
 public:
  enum class Role { Function, Predicate };
  struct Decl {
    Role role;
    std::size_t arity;
  };

  Signature() = default;
  // Parses lines of the form `const Name : i^k -> i` and `pred Name : i^k`.
  static Signature parse(std::string_view text);

  void declare(const std::string& name, Role role, std::size_t arity);
  const Decl* find(const std::string& name) const;
  bool open() const { return open_; }
  void set_open(bool b) { open_ = b; }
  const std::map<std::string, Decl>& decls() const { return decls_; }

  // Symbol for a declared constant; its sort follows the declaration.
  Symbol constant(const std::string& name) const;

 private:
  std::map<std::string, Decl> decls_;
  bool open_ = true;
};

enum class Tok {
  Ident,
  LParen,
  RParen,
  Comma,
  Dot,
  Equals,
  Tilde,
  Amp,
  Bar,
  Arrow,
  DArrow,
  Assign,
  Backslash,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view text, int first_line = 1);

// Recursive-descent parser over one chunk of text. Exposed so that script and
// choice-condition readers can parse mixed lines.
class Parser {
 public:
  Parser(std::string_view text, Signature& sig, int first_line = 1);

  Expr formula();
  Expr term();
  // A `?x` or `!x` token.
  Symbol free_symbol();
  // A bare identifier used as a binder.
  Symbol binder_symbol();

  bool at(Tok k) const { return toks_[pos_].kind == k; }
  bool at_keyword(const char* kw) const;
  bool accept(Tok k);
  bool accept_keyword(const char* kw);
  void expect(Tok k, const char* what);
  void expect_end();
  const Token& peek() const { return toks_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const;

 private:
  Expr iff();
  Expr imp();
  Expr disj();
  Expr conj();
  Expr unary(bool no_eq);
  Expr atom(bool no_eq);
  Expr term_after_ident(const Token& head, std::vector<Expr> args);
  Expr pred_after_ident(const Token& head, std::vector<Expr> args);
  std::vector<Expr> maybe_args();
  Symbol resolve_free(const Token& t, std::size_t arity);

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Signature& sig_;
  // Arity seen for each free symbol, to keep uses consistent.
  std::map<std::string, std::size_t> free_arity_;
};

Expr parse_formula(std::string_view text, Signature& sig);
Expr parse_term(std::string_view text, Signature& sig);
// `?x := t, ?y := s` (or with `!a`). Sorts on the left are provisional.
std::vector<std::pair<Symbol, Expr>> parse_bindings(Parser& p);

}  // namespace epsk

#endif  // EPSK_PARSER_HPP_
