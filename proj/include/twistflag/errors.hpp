#pragma once

#include <stdexcept>

namespace twistflag {

/// Bad caller input (malformed data, violated type invariants).
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An operation's mathematical precondition does not hold.
class PreconditionFailed : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Two routes that must agree disagree; always a bug.
class InternalInconsistency : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace twistflag
