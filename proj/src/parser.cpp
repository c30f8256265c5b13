// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "parser.hpp"

#include <cctype>
#include <cstring>
#include <exception>
#include <sstream>

namespace epsk {

namespace {

bool is_keyword(const std::string& s) {
  return s == "all" || s == "ex" || s == "eps" || s == "true" || s == "false";
}

bool has_sigil(const std::string& s) { return !s.empty() && (s[0] == '?' || s[0] == '!'); }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

// ---- signature -------------------------------------------------------------

void Signature::declare(const std::string& name, Role role, std::size_t arity) {
  if (name.empty() || has_sigil(name) || is_keyword(name) ||
      !std::isalpha(static_cast<unsigned char>(name[0])))
    throw Error(ErrorKind::Input, "bad constant name '" + name + "'");
  auto it = decls_.find(name);
  if (it != decls_.end()) {
    if (it->second.role != role || it->second.arity != arity)
      throw Error(ErrorKind::Sort, "conflicting declarations for " + name);
    return;
  }
  decls_.emplace(name, Decl{role, arity});
}

const Signature::Decl* Signature::find(const std::string& name) const {
  auto it = decls_.find(name);
  return it == decls_.end() ? nullptr : &it->second;
}

Symbol Signature::constant(const std::string& name) const {
  const Decl* d = find(name);
  if (!d) throw Error(ErrorKind::Undeclared, "undeclared constant " + name);
  return Symbol::constant(name, d->role == Role::Function ? Sort::curried(d->arity)
                                                         : Sort::relation(d->arity));
}

namespace {

// i, i^k, i -> i -> i, i^k -> i. Returns the number of argument positions and
// whether the sort ends in i (function) or is a bare product (predicate).
std::size_t parse_sort_spec(const std::string& spec, bool function, int line) {
  std::vector<std::string> parts;
  std::string s = spec;
  std::size_t at = 0;
  while (true) {
    std::size_t arrow = s.find("->", at);
    parts.push_back(trim(s.substr(at, arrow == std::string::npos ? std::string::npos
                                                                  : arrow - at)));
    if (arrow == std::string::npos) break;
    at = arrow + 2;
  }
  auto power = [&](const std::string& p) -> std::size_t {
    if (p == "i") return 1;
    if (p == "o") return 0;
    if (p.size() > 2 && p[0] == 'i' && p[1] == '^') {
      std::size_t k = 0;
      for (std::size_t j = 2; j < p.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(p[j])))
          throw SyntaxError(line, 1, "bad sort '" + spec + "'");
        k = k * 10 + static_cast<std::size_t>(p[j] - '0');
      }
      return k;
    }
    throw SyntaxError(line, 1, "bad sort '" + spec + "'");
  };
  if (!function) {
    if (parts.size() != 1) throw SyntaxError(line, 1, "predicate sort must be i^k");
    return power(parts[0]);
  }
  if (parts.back() != "i") throw SyntaxError(line, 1, "function sort must end in i");
  if (parts.size() == 1) return 0;
  if (parts.size() == 2) return power(parts[0]);
  for (std::size_t k = 0; k + 1 < parts.size(); ++k)
    if (parts[k] != "i") throw SyntaxError(line, 1, "bad sort '" + spec + "'");
  return parts.size() - 1;
}

}  // namespace

Signature Signature::parse(std::string_view text) {
  Signature sig;
  sig.open_ = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    std::string l = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (l.empty()) continue;
    std::istringstream ls(l);
    std::string kw, name;
    ls >> kw >> name;
    bool function = kw == "const";
    if (!function && kw != "pred")
      throw SyntaxError(line, 1, "expected 'const' or 'pred'");
    if (!name.empty() && name.back() == ':') name.pop_back();
    std::size_t colon = l.find(':');
    if (name.empty() || colon == std::string::npos)
      throw SyntaxError(line, 1, "expected 'Name : sort'");
    std::size_t arity = parse_sort_spec(trim(l.substr(colon + 1)), function, line);
    sig.declare(name, function ? Role::Function : Role::Predicate, arity);
  }
  return sig;
}

// ---- lexer -----------------------------------------------------------------

std::vector<Token> tokenize(std::string_view text, int first_line) {
  std::vector<Token> out;
  int line = first_line, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string t, int c) { out.push_back({k, std::move(t), line, c}); };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    int start = col;
    if (std::isalpha(static_cast<unsigned char>(c)) ||
        ((c == '?' || c == '!') && i + 1 < text.size() &&
         std::isalpha(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_'))
        ++j;
      push(Tok::Ident, std::string(text.substr(i, j - i)), start);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto two = [&](const char* s) { return text.substr(i, std::strlen(s)) == s; };
    if (two("<->")) {
      push(Tok::DArrow, "<->", start);
      i += 3;
      col += 3;
      continue;
    }
    if (two("->")) {
      push(Tok::Arrow, "->", start);
      i += 2;
      col += 2;
      continue;
    }
    if (two(":=")) {
      push(Tok::Assign, ":=", start);
      i += 2;
      col += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '=': k = Tok::Equals; break;
      case '~': k = Tok::Tilde; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      case '\\': k = Tok::Backslash; break;
      default:
        throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
    }
    push(k, std::string(1, c), start);
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// ---- parser ----------------------------------------------------------------

Parser::Parser(std::string_view text, Signature& sig, int first_line)
    : toks_(tokenize(text, first_line)), sig_(sig) {}

void Parser::fail(const std::string& msg) const {
  const Token& t = toks_[pos_];
  throw SyntaxError(t.line, t.column, msg);
}

namespace {
[[noreturn]] void fail_at(ErrorKind k, const Token& t, const std::string& msg) {
  throw Error(k, std::to_string(t.line) + ":" + std::to_string(t.column) + ": " + msg);
}

const char* tok_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Equals: return "'='";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
    case Tok::Assign: return "':='";
    case Tok::Backslash: return "'\\'";
    case Tok::End: return "end of input";
  }
  return "?";
}
}  // namespace

bool Parser::at_keyword(const char* kw) const {
  return toks_[pos_].kind == Tok::Ident && toks_[pos_].text == kw;
}

bool Parser::accept_keyword(const char* kw) {
  if (!at_keyword(kw)) return false;
  ++pos_;
  return true;
}

bool Parser::accept(Tok k) {
  if (!at(k)) return false;
  ++pos_;
  return true;
}

void Parser::expect(Tok k, const char* what) {
  if (!accept(k))
    fail(std::string("expected ") + tok_name(k) + " " + what + ", found " +
         (at(Tok::End) ? std::string("end of input") : "'" + peek().text + "'"));
}

void Parser::expect_end() {
  if (!at(Tok::End)) fail("unexpected '" + peek().text + "'");
}

Expr Parser::formula() { return iff(); }

Expr Parser::iff() {
  Expr l = imp();
  while (accept(Tok::DArrow)) l = Expr::iff(l, imp());
  return l;
}

Expr Parser::imp() {
  Expr l = disj();
  if (accept(Tok::Arrow)) return Expr::implies(l, imp());
  return l;
}

Expr Parser::disj() {
  Expr l = conj();
  while (accept(Tok::Bar)) l = Expr::disj(l, conj());
  return l;
}

Expr Parser::conj() {
  Expr l = unary(false);
  while (accept(Tok::Amp)) l = Expr::conj(l, unary(false));
  return l;
}

Symbol Parser::binder_symbol() {
  const Token& t = peek();
  if (t.kind != Tok::Ident || has_sigil(t.text) || is_keyword(t.text) ||
      !std::islower(static_cast<unsigned char>(t.text[0])) || sig_.find(t.text))
    fail("expected a bound atom name");
  ++pos_;
  return Symbol::bound(t.text);
}

Symbol Parser::free_symbol() {
  const Token& t = peek();
  if (t.kind != Tok::Ident || !has_sigil(t.text)) fail("expected ?var or !atom");
  ++pos_;
  std::string name = t.text.substr(1);
  return t.text[0] == '?' ? Symbol::var(name) : Symbol::atom(name);
}

// Inside an eps body an unparenthesized equation would swallow the `=` of an
// enclosing equation, so it is not accepted there.
Expr Parser::unary(bool no_eq) {
  if (accept(Tok::Tilde)) return Expr::neg(unary(no_eq));
  if (at_keyword("all") || at_keyword("ex")) {
    Kind k = peek().text == "all" ? Kind::Forall : Kind::Exists;
    ++pos_;
    Symbol v = binder_symbol();
    expect(Tok::Dot, "after bound atom");
    return Expr::binder(k, v, unary(no_eq));
  }
  return atom(no_eq);
}

Expr Parser::atom(bool no_eq) {
  if (at_keyword("true")) {
    ++pos_;
    return Expr::top();
  }
  if (at_keyword("false")) {
    ++pos_;
    return Expr::bottom();
  }
  if (at(Tok::LParen)) {
    std::size_t save = pos_;
    Signature sig_save = sig_;
    auto arity_save = free_arity_;
    std::exception_ptr first_error;
    try {
      ++pos_;
      Expr f = formula();
      expect(Tok::RParen, "to close formula");
      if (no_eq || !at(Tok::Equals)) return f;
    } catch (const Error&) {
      first_error = std::current_exception();
    }
    pos_ = save;
    sig_ = sig_save;
    free_arity_ = arity_save;
    try {
      ++pos_;
      Expr lhs = term();
      expect(Tok::RParen, "to close term");
      if (no_eq) fail("a term is not a formula");
      expect(Tok::Equals, "after parenthesized term");
      Expr rhs = term();
      return Expr::eq(lhs, rhs);
    } catch (const Error&) {
      if (first_error) std::rethrow_exception(first_error);
      throw;
    }
  }
  if (at_keyword("eps")) {
    Expr lhs = term();
    if (no_eq) fail("a term is not a formula");
    expect(Tok::Equals, "after eps term");
    Expr rhs = term();
    if (!sort_of(lhs).is_base() || !sort_of(rhs).is_base())
      fail_at(ErrorKind::Sort, peek(), "equation between non-individual terms");
    return Expr::eq(lhs, rhs);
  }
  if (at(Tok::Ident) && !is_keyword(peek().text)) {
    Token head = peek();
    ++pos_;
    std::vector<Expr> args = maybe_args();
    if (!no_eq && at(Tok::Equals)) {
      Expr lhs = term_after_ident(head, std::move(args));
      const Token& eq = peek();
      ++pos_;
      Expr rhs = term();
      if (!sort_of(lhs).is_base() || !sort_of(rhs).is_base())
        fail_at(ErrorKind::Sort, eq, "equation between non-individual terms");
      return Expr::eq(lhs, rhs);
    }
    return pred_after_ident(head, std::move(args));
  }
  fail("expected a formula");
}

Expr Parser::term() {
  if (at_keyword("eps")) {
    ++pos_;
    Symbol v = binder_symbol();
    expect(Tok::Dot, "after bound atom");
    return Expr::eps(v, unary(true));
  }
  if (accept(Tok::LParen)) {
    Expr t = term();
    expect(Tok::RParen, "to close term");
    return t;
  }
  if (at(Tok::Ident) && !is_keyword(peek().text)) {
    Token head = peek();
    ++pos_;
    return term_after_ident(head, maybe_args());
  }
  fail("expected a term");
}

std::vector<Expr> Parser::maybe_args() {
  std::vector<Expr> args;
  if (!accept(Tok::LParen)) return args;
  do {
    const Token& at_arg = peek();
    Expr a = term();
    if (!sort_of(a).is_base())
      fail_at(ErrorKind::Sort, at_arg, "argument must be an individual term");
    args.push_back(a);
  } while (accept(Tok::Comma));
  expect(Tok::RParen, "to close argument list");
  return args;
}

Symbol Parser::resolve_free(const Token& t, std::size_t arity) {
  auto [it, inserted] = free_arity_.emplace(t.text, arity);
  if (!inserted && it->second != arity)
    fail_at(ErrorKind::Sort, t, t.text + " used with " + std::to_string(arity) +
                                    " and " + std::to_string(it->second) + " arguments");
  std::string name = t.text.substr(1);
  Sort s = Sort::curried(arity);
  return t.text[0] == '?' ? Symbol::var(name, s) : Symbol::atom(name, s);
}

Expr Parser::term_after_ident(const Token& head, std::vector<Expr> args) {
  const std::string& name = head.text;
  if (name[0] == '!' && !args.empty())
    fail_at(ErrorKind::Sort, head, "free atom " + name + " applied to arguments");
  if (has_sigil(name)) {
    Symbol f = resolve_free(head, args.size());
    return Expr::app(f, std::move(args));
  }
  const Signature::Decl* d = sig_.find(name);
  if (!d && std::isupper(static_cast<unsigned char>(name[0]))) {
    if (!sig_.open()) fail_at(ErrorKind::Undeclared, head, "undeclared constant " + name);
    sig_.declare(name, Signature::Role::Function, args.size());
    d = sig_.find(name);
  }
  if (!d) {
    Symbol b = Symbol::bound(name, Sort::curried(args.size()));
    return Expr::app(b, std::move(args));
  }
  if (d->role == Signature::Role::Predicate)
    fail_at(ErrorKind::Sort, head, "predicate " + name + " used as a term");
  if (!args.empty() && args.size() != d->arity)
    fail_at(ErrorKind::Sort, head, name + " expects " + std::to_string(d->arity) +
                                       " arguments, got " + std::to_string(args.size()));
  return Expr::app(sig_.constant(name), std::move(args));
}

Expr Parser::pred_after_ident(const Token& head, std::vector<Expr> args) {
  const std::string& name = head.text;
  if (has_sigil(name))
    fail_at(ErrorKind::Sort, head, "free symbol " + name + " used as a formula");
  const Signature::Decl* d = sig_.find(name);
  if (!d && std::isupper(static_cast<unsigned char>(name[0]))) {
    if (!sig_.open()) fail_at(ErrorKind::Undeclared, head, "undeclared constant " + name);
    sig_.declare(name, Signature::Role::Predicate, args.size());
    d = sig_.find(name);
  }
  if (!d) throw SyntaxError(head.line, head.column, "bound atom '" + name + "' used as a formula");
  if (d->role == Signature::Role::Function)
    fail_at(ErrorKind::Sort, head, "function " + name + " used as a formula");
  if (args.size() != d->arity)
    fail_at(ErrorKind::Sort, head, name + " expects " + std::to_string(d->arity) +
                                       " arguments, got " + std::to_string(args.size()));
  return Expr::pred(sig_.constant(name), std::move(args));
}

Expr parse_formula(std::string_view text, Signature& sig) {
  Parser p(text, sig);
  Expr f = p.formula();
  p.expect_end();
  return f;
}

Expr parse_term(std::string_view text, Signature& sig) {
  Parser p(text, sig);
  Expr t = p.term();
  p.expect_end();
  return t;
}

std::vector<std::pair<Symbol, Expr>> parse_bindings(Parser& p) {
  std::vector<std::pair<Symbol, Expr>> out;
  do {
    Symbol x = p.free_symbol();
    p.expect(Tok::Assign, "in binding");
    out.emplace_back(x, p.term());
  } while (p.accept(Tok::Comma));
  return out;
}

}  // namespace epsk
