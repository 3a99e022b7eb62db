#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad matrix shapes, ill-defined morphisms, bad files.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Text input that could not be parsed; carries the 1-based line number
/// when one is known (0 otherwise).
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : ValidationError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class FaceMissingError : public ParseError {
 public:
  using ParseError::ParseError;
};

class ValueInversionError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A generator of the smaller lattice does not lie in the larger one.
class ContainmentError : public ValidationError {
 public:
  ContainmentError(const std::string& what, std::size_t generator)
      : ValidationError(what), generator_(generator) {}
  std::size_t generator() const noexcept { return generator_; }

 private:
  std::size_t generator_;
};

/// The characteristic polynomial of an endomorphism does not split into
/// linear factors over its field.
class NonSplitError : public Error {
 public:
  using Error::Error;
};

/// Requested a B-group element for a category that has none (FinSet).
class NoBGroupError : public Error {
 public:
  using Error::Error;
};

}  // namespace gpd
