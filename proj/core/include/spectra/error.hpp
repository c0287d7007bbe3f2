#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

// Library errors. `kind()` distinguishes the few classes callers branch on
// (the CLI maps UsageError to exit code 2, everything else to 1).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: bad dimensions, unparsable notation, invalid descriptor.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

// A configured enumeration cap would be exceeded.
class CapError : public Error {
public:
    explicit CapError(const std::string& msg) : Error(msg) {}
};

// A mathematical precondition of an operation does not hold for the input.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

} // namespace spectra
