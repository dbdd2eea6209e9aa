#pragma once

#include <stdexcept>
#include <string>

namespace gonal {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZeroError : Error {
    using Error::Error;
};

struct MixedFieldError : Error {
    using Error::Error;
};

struct InvalidArgumentError : Error {
    using Error::Error;
};

// Enumeration over a field (or residue ring) would exceed the configured cap.
struct CapExceededError : Error {
    using Error::Error;
};

struct DegeneratePolygonError : Error {
    using Error::Error;
};

// Exact division failed where the algebra guarantees exactness; indicates a bug.
struct InexactDivisionError : Error {
    using Error::Error;
};

// Some d_i in the degree plan is negative: the requested genus is too small
// for the construction.
struct InfeasibleGenusError : Error {
    InfeasibleGenusError(int index_, long long value_, const std::string& what)
        : Error(what), index(index_), value(value_) {}
    int index;
    long long value;
};

// The randomized tuple search ran out of trials.
struct BudgetExhaustedError : Error {
    BudgetExhaustedError(long long trials_, std::string advisory_, const std::string& what)
        : Error(what), trials(trials_), advisory(std::move(advisory_)) {}
    long long trials;
    std::string advisory;  // nonempty for the even-characteristic case
};

// A verification check failed; `check` names the first failing check.
struct VerificationError : Error {
    VerificationError(std::string check_, const std::string& what)
        : Error(what), check(std::move(check_)) {}
    std::string check;
};

// Certificate file violates the v1 schema.
struct SchemaError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

}  // namespace gonal
