#pragma once

#include <stdexcept>
#include <string>

namespace roughcontact {

/// Argument outside the domain of an operation (negative gap, point outside the gap region, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Too few usable samples for a fit, constant function where oscillation is required, ...
class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature stopped before reaching the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_rel_error)
      : std::runtime_error(what), achieved_(achieved_rel_error) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Two independent evaluations of the same quantity disagree.
class CrossCheckError : public std::runtime_error {
 public:
  CrossCheckError(const std::string& what, double discrepancy)
      : std::runtime_error(what), discrepancy_(discrepancy) {}

  double discrepancy() const noexcept { return discrepancy_; }

 private:
  double discrepancy_;
};

/// ODE step size collapsed below its floor before a terminal event.
class StepUnderflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace roughcontact
