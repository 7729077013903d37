#pragma once

#include <stdexcept>
#include <string>

namespace rabi_qes {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (zero polynomial, singular
/// substitution, out-of-range index, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Root refinement hit its iteration cap; carries the best estimate so far.
class RefinementError : public Error {
 public:
  RefinementError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

/// The Juddian constraint row is not satisfied to the requested tolerance.
class ConstraintError : public Error {
 public:
  ConstraintError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace rabi_qes
