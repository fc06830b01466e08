#ifndef ARS_ERRORS_HPP
#define ARS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ars {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad expressions, unknown variables, schema violations.
struct InputError : Error {
    using Error::Error;
};

// A mathematical precondition failed (not a bug): mismatched rings,
// non-preserved relations, zero divisors, missing inverses.
struct MathError : Error {
    using Error::Error;
};

// Candidate map does not preserve a defining relation.
struct RelationViolation : MathError {
    using MathError::MathError;
};

// (r, s) is not a height-2 ideal, so the quotient ring is rejected.
struct HeightTwoError : MathError {
    using MathError::MathError;
};

// Coprimality with r could not be established for a base division.
struct CoprimalityError : MathError {
    using MathError::MathError;
};

// An iteration or size budget ran out (Nmax, max_iter, term ceiling).
struct BudgetError : Error {
    using Error::Error;
};

// An internal re-verification failed; indicates a bug, never user input.
struct InternalError : Error {
    using Error::Error;
};

// A verified computation contradicts a theorem the ring assumptions
// guarantee. Either an assumption flag is wrong or there is a bug.
struct InconsistencyError : InternalError {
    using InternalError::InternalError;
};

} // namespace ars

#endif
