#pragma once

#include <stdexcept>
#include <string>

namespace diamcert {

/// (alpha, beta) outside S = {alpha > 0, beta >= 0}, or otherwise unusable.
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller broke an operation's precondition (e.g. n < d + 2^(2a+1)).
class PreconditionViolated : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rolling-table access outside the two retained rows or the row capacity.
class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A comparison could not be certified at the maximum working precision.
class Undecidable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The table would outgrow the configured memory budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// f_{a,b}(l, n) is not superlinear in n and no failing pair was found.
class AssumptionViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace diamcert
