#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace symgf {

// Bad dimensions, indices or parameters.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request outside the region where a numerical method is defined
// (matrix log far from the identity, failed order-2 fit gate, ...).
class NumericDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnsupportedOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Generating function violates S(0,x) = 0 or grad_x S(0,x) = 0.
class InvalidGenFunError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Newton did not converge, or converged onto a branch not connected to the
// base solution. Carries the last iterate (p_bar followed by x_bar).
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate,
                   double residual, int iterations)
      : std::runtime_error(what),
        last_iterate_(std::move(last_iterate)),
        residual_(residual),
        iterations_(iterations) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
  int iterations_;
};

// The stationary-system Jacobian is numerically singular: transversality
// fails at this point.
class DegeneracyError : public std::runtime_error {
 public:
  DegeneracyError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

// Malformed user input (JSON files, CLI values).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace symgf
