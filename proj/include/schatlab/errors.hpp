#pragma once

#include <stdexcept>
#include <string>

namespace schatlab {

// Raised when a factorization fails to converge.
struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an input violates an operation's precondition.
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a randomized search exhausts its budget without a witness.
// Reported, never interpreted as a disproof.
struct SearchFailure : std::runtime_error {
  explicit SearchFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace schatlab
