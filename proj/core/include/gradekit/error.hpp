#pragma once

#include <stdexcept>
#include <string>

namespace gradekit {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Syntax or semantic failure while reading DSL / formula text.
class ParseError : public Error {
public:
  ParseError(std::string message, int line, int column)
      : Error(message + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line), column(column) {}
  int line;
  int column;
};

// Invalid arguments or unsupported inputs for an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

// Formula enumeration exceeded its configured cap.
class EnumerationOverflow : public Error {
public:
  using Error::Error;
};

// Iterative-deepening search ran out of budget on a pair that needs a witness.
class DepthCapExhausted : public Error {
public:
  DepthCapExhausted(std::string message, std::string a, std::string b)
      : Error(std::move(message)), a(std::move(a)), b(std::move(b)) {}
  std::string a;
  std::string b;
};

// Violated internal invariant; indicates a bug, not bad input.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace gradekit
