#pragma once

#include <stdexcept>
#include <string>

namespace stringtop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation needed data beyond the materialized degree range.
class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& what)
      : Error("insufficient truncation: " + what) {}
};

/// d o d != 0 somewhere.
class NotAComplexError : public Error {
 public:
  NotAComplexError(int degree, const std::string& what)
      : Error("not a complex at degree " + std::to_string(degree) + ": " + what),
        degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// Input violates a structural invariant (degrees, signs, axioms).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace stringtop
