#pragma once

#include <stdexcept>
#include <string>

namespace jordan {

/// Malformed textual input (partition strings, fixture rows).
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A value violates a mathematical precondition (zero size, singular matrix,
/// partition not realisable in the requested group, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The characteristic is unusable: not prime, or bad for the requested group.
class CharacteristicError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A dense matrix would exceed the configured entry cap.
class CapExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

} // namespace jordan
