#pragma once

#include <stdexcept>
#include <string>

namespace hbops {

/// Input rejected by a validation rule (asymmetric body, bad shape, ...).
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed document or rational literal.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Valid input that the requested exact path cannot handle.
class UnsupportedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Precondition of an operation violated by the caller.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Broken internal invariant; indicates a bug, never bad input.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace hbops
