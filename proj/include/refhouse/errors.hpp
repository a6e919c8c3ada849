#pragma once

#include <stdexcept>
#include <string>

namespace refhouse {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Instance data violates a model invariant.
class InvalidInstance : public Error {
public:
    using Error::Error;
};

// Housing is not an injective map from refugees onto empty vertices.
class InvalidHousing : public Error {
public:
    using Error::Error;
};

// An operation was called outside its precondition (degree bound, interval approvals, ...).
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

// Explicit refusal when an exponential construction or enumeration would exceed its budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace refhouse
