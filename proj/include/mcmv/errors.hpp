#pragma once

#include <stdexcept>
#include <string>

namespace mcmv {

// Invalid input: out-of-disk points, malformed ranges, inconsistent data.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation at a pole or branch point of a rational/algebraic function.
class PoleError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Iterative or structural numerical failure (non-convergence, bad counts,
// singular solves).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace mcmv
