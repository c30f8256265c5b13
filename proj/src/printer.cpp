// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

// Printing that the parser reads back. Equations below a negation, a
// quantifier or an eps binder are parenthesized, as are eps bodies that are
// not plain atoms.

#include "syntax.hpp"

namespace epsk {

namespace {

int prec(Kind k) {
  switch (k) {
    case Kind::Iff: return 1;
    case Kind::Implies: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    default: return 5;
  }
}

const char* op(Kind k) {
  switch (k) {
    case Kind::Iff: return " <-> ";
    case Kind::Implies: return " -> ";
    case Kind::Or: return " | ";
    case Kind::And: return " & ";
    default: return "";
  }
}

void print(const Expr& e, std::string& out);

void print_args(const Expr& e, std::string& out) {
  out += e.symbol().str();
  if (e.kids().empty()) return;
  out += '(';
  for (std::size_t k = 0; k < e.kids().size(); ++k) {
    if (k) out += ", ";
    print(e.kid(k), out);
  }
  out += ')';
}

// Operand of ~, all, ex, eps.
void print_unary_operand(const Expr& e, std::string& out) {
  if (e.is_binary() || e.kind() == Kind::Eq) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print_side(const Expr& e, int min_prec, std::string& out) {
  if (prec(e.kind()) < min_prec) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Kind::Sym:
      out += e.symbol().str();
      return;
    case Kind::App:
    case Kind::Pred:
      print_args(e, out);
      return;
    case Kind::Eps:
      out += "eps " + e.symbol().name + ". ";
      print_unary_operand(e.body(), out);
      return;
    case Kind::True:
      out += "true";
      return;
    case Kind::False:
      out += "false";
      return;
    case Kind::Eq:
      print(e.kid(0), out);
      out += " = ";
      print(e.kid(1), out);
      return;
    case Kind::Not:
      out += '~';
      print_unary_operand(e.kid(0), out);
      return;
    case Kind::Forall:
    case Kind::Exists:
      out += e.kind() == Kind::Forall ? "all " : "ex ";
      out += e.symbol().name + ". ";
      print_unary_operand(e.body(), out);
      return;
    case Kind::Implies:
      print_side(e.kid(0), 3, out);
      out += op(e.kind());
      print_side(e.kid(1), 2, out);
      return;
    case Kind::Iff:
    case Kind::Or:
    case Kind::And: {
      int p = prec(e.kind());
      print_side(e.kid(0), p, out);
      out += op(e.kind());
      print_side(e.kid(1), p + 1, out);
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  if (e) print(e, out);
  return out;
}

std::string to_string(const Sequent& s) {
  std::string out;
  for (std::size_t k = 0; k < s.formulas.size(); ++k) {
    if (k) out += ", ";
    out += to_string(s.formulas[k]);
  }
  return out;
}

}  // namespace epsk
