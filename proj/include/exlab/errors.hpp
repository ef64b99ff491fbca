#ifndef EXLAB_ERRORS_HPP
#define EXLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace exlab {

// Exit-code contract: 2 = bad input, 3 = numerical failure, 4 = broken internal invariant.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by evaluate() when a subexpression leaves its domain (log of a
// non-positive number, 0 raised to a negative power, ...).
class EvalDomainError : public NumericalError {
 public:
  explicit EvalDomainError(const std::string& msg) : NumericalError(msg) {}
};

// Raised by evaluate() when a free variable has no binding.
class UnboundVariableError : public InputError {
 public:
  explicit UnboundVariableError(const std::string& msg) : InputError(msg) {}
};

}  // namespace exlab

#endif
