#pragma once

#include <stdexcept>
#include <string>

namespace qpath {

/// Base class for all qpath errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed inputs: dimension mismatches, broken invariants, bad indices.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Unusable configuration (unknown keys, out-of-range values, schema mismatch).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Numerical breakdown: degenerate fits, denominator collapse, empty spectra.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace qpath
