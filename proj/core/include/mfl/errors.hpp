#pragma once

#include <stdexcept>
#include <string>

namespace mfl {

/// A field or variation direction carries grades outside the declared set.
class GradeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// |det| of an extensor fell below the invertibility gate.
class SingularExtensorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation called with a Lagrangian of the wrong derivative mode.
class ModeMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Linear solve failed: incompatible right-hand side or no convergence.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mfl
