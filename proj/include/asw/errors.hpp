#pragma once

#include <stdexcept>
#include <string>

namespace asw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied parameters (non-prime p, reducible modulus, bad lengths).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A requested coefficient lies outside the region where a truncated series is known.
class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

/// Ghost inversion met a component that is not divisible by the required power of p.
class DivisibilityError : public Error {
 public:
  using Error::Error;
};

class ZeroValuation : public Error {
 public:
  ZeroValuation() : Error("valuation of the zero series") {}
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

class NotPrincipalUnit : public Error {
 public:
  using Error::Error;
};

/// normalize_symbol was handed a pair outside the supported monomial/unit shape.
class UnsupportedPair : public Error {
 public:
  using Error::Error;
};

class BadIndex : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace asw
