#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vag {

using Int = std::int64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Presentation data is inconsistent (bad table, bad action, bad letter).
class PresentationError : public Error {
 public:
  using Error::Error;
};

// Spec/DFA text could not be parsed; message carries source and line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class TorsionError : public Error {
 public:
  using Error::Error;
};

class ActionError : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

class NotConfigured : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class OutOfRadius : public Error {
 public:
  OutOfRadius(const std::string& what, Int suggested_radius)
      : Error(what), suggested_radius_(suggested_radius) {}
  Int suggested_radius() const noexcept { return suggested_radius_; }

 private:
  Int suggested_radius_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class SymbolMismatch : public Error {
 public:
  using Error::Error;
};

// Raised when a computation contradicts a claim that is supposed to be a
// theorem. Never expected on a correct build.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

namespace checked {

inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Int neg(Int a) { return sub(0, a); }

// a + b * c
inline Int fma(Int a, Int b, Int c) { return add(a, mul(b, c)); }

}  // namespace checked
}  // namespace vag
