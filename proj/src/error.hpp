// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EPSK_ERROR_HPP_
#define EPSK_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace epsk {

enum class ErrorKind {
  Syntax,        // malformed input text
  Sort,          // ill-sorted term or formula
  Undeclared,    // constant missing from a strict signature
  IllFormed,     // unbound bound atom, bad choice-condition entry, ...
  Rule,          // inference rule not applicable
  Substitution,  // not a (P,N)-substitution, missing N-edge, ...
  Scale,         // oracle limits exceeded
  Input,         // files, JSON structures, CLI arguments
  Internal,      // broken invariant
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse errors carry a position; both are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& msg)
      : Error(ErrorKind::Syntax, std::to_string(line) + ":" +
                                     std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace epsk

#endif  // EPSK_ERROR_HPP_
