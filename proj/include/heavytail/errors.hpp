#pragma once

#include <stdexcept>

namespace heavytail {

// Data that admits no finite estimate (e.g. a tail with a single distinct value).
class DegenerateDataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Too few observations for the requested estimate.
class InsufficientDataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ConfigurationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Caller broke an operation's precondition (e.g. comparing fits on different tails).
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

class LookupError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace heavytail
