#pragma once

#include <stdexcept>
#include <string>

namespace udf {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A result would need a basis element above the declared degree cutoff.
class CutoffOverflow : public Error {
public:
    using Error::Error;
};

/// A precondition of an operation does not hold (arity mismatch, wrong
/// constant term, non-counital parent, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace udf
