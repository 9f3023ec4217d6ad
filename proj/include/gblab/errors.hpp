#pragma once

#include <stdexcept>
#include <string>

namespace gblab {

/// Precondition violation on a caller-supplied argument.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computation finished but failed its own integrity check
/// (rounding residue, oracle mismatch, unconverged quadrature).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sieve cache file could not be read, written or validated.
class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two major arcs intersect for the requested parameters.
class ArcOverlapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gblab
