#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vigl {

// Malformed or out-of-range user input (files, flags, vertex ids).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A documented precondition of an operation was violated by the caller.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularMatrixError : public ArithmeticError {
 public:
  SingularMatrixError(std::size_t rank, std::size_t dim)
      : ArithmeticError("singular matrix: rank " + std::to_string(rank) + " of " +
                        std::to_string(dim)),
        rank_(rank) {}
  std::size_t rank() const { return rank_; }

 private:
  std::size_t rank_;
};

// Randomized routine exhausted its retries without a verified answer.
class ProbabilisticFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vigl
