#pragma once

#include <stdexcept>
#include <string>

namespace boolnet {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structural problems: bad node wiring, inconsistent partial functions,
// parameters that violate a construction's feasibility conditions.
struct validation_error : error {
    using error::error;
};

// Malformed or unsupported input documents.
struct parse_error : error {
    using error::error;
};

// A value does not fit the capacity of a coding scheme or counter.
struct capacity_error : error {
    using error::error;
};

// An argument lies outside the mathematical domain of a formula.
struct domain_error : error {
    using error::error;
};

// A simulation exceeded its step budget.  Estimators catch this and record
// the sample as inconclusive; it is never silently swallowed elsewhere.
struct budget_error : error {
    using error::error;
};

} // namespace boolnet
