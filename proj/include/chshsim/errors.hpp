#pragma once

#include <stdexcept>

namespace chshsim {

/// A configuration or argument violates a documented precondition.
class InvalidConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact computation would exceed its configured cost limit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A measurement record is internally inconsistent (c != a*b, bad index).
class CorruptRecord : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The correlation needs at least one round in every channel.
class EmptyChannel : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace chshsim
