#pragma once

#include <stdexcept>
#include <string>

namespace parahiggs {

/// Violated precondition on caller-supplied data (non-coprime p, bad weight
/// denominator, malformed inline text). The CLI maps these to exit code 1.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised by mult_order / mod_inverse when the base is not invertible.
class NotAUnit : public DomainError {
public:
    explicit NotAUnit(const std::string& what) : DomainError(what) {}
};

/// A computed result contradicted a proven bound or identity. Never expected
/// for valid input; if it fires, either the library or the bound is wrong.
class ConsistencyError : public std::logic_error {
public:
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

} // namespace parahiggs
