#pragma once

#include <stdexcept>
#include <string>

namespace itexp {

/// Argument lies outside the domain of a function (e.g. s outside [t,T]).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A precondition stated by an operation's contract was violated.
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A request exceeds a resource guard (table sizes, grid sizes).
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// The combination of inputs has no formula in this library.
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace itexp
