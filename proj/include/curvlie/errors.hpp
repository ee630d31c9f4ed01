#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace curvlie {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (dimension mismatch, bad document, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on data violating its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A decision fell inside a guard band; the candidate outcomes are listed.
class IndeterminateError : public Error {
 public:
  IndeterminateError(const std::string& what, std::vector<std::string> candidates = {})
      : Error(what), candidates_(std::move(candidates)) {}
  const std::vector<std::string>& candidates() const { return candidates_; }

 private:
  std::vector<std::string> candidates_;
};

/// Self-consistency check failed; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// A numerical kernel did not converge.
class ComputationError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvlie
