#pragma once

#include <stdexcept>
#include <string>

namespace nuspread {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad shape, invalid probability, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Exact enumeration was requested on an instance beyond the desk-scale cutoff.
class InfeasibleSize : public Error {
 public:
  using Error::Error;
};

/// A randomized procedure ran out of its attempt budget.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace nuspread
