#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mgefst {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two elements from different monoid instances were combined.
class DescriptorMismatchError : public Error {
 public:
  using Error::Error;
};

/// quotient(b, a) was requested although a does not left-divide b.
class NotAPrefixError : public Error {
 public:
  using Error::Error;
};

/// A word used a letter outside the machine's alphabet.
class UnknownLetterError : public Error {
 public:
  using Error::Error;
};

/// Malformed literal, descriptor, or file. Carries "file:line" context
/// when the input came from a file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Violated operation precondition (e.g. a partial machine where a
/// complete one is required).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The output-pushing fixpoint did not stabilise within its round cap.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// More equivalence classes were found than the stated bound allows.
/// `certificate` holds bound+1 pairwise-inequivalent words.
class IndexExceededError : public Error {
 public:
  IndexExceededError(int bound, std::vector<std::string> witnesses)
      : Error("class index exceeds bound " + std::to_string(bound)),
        bound_(bound),
        certificate_(std::move(witnesses)) {}

  int bound() const { return bound_; }
  const std::vector<std::string>& certificate() const { return certificate_; }

 private:
  int bound_;
  std::vector<std::string> certificate_;
};

/// A quotient required by the table-to-machine construction was not
/// defined; signals a too-small exploration depth or an oracle outside
/// the supported function class.
class QuotientFailureError : public Error {
 public:
  using Error::Error;
};

/// A produced witness triple failed its defining equations.
class WitnessViolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace mgefst
