#pragma once

#include <stdexcept>
#include <string>

namespace alight {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// A query fell outside the domain of the data (time range, image bounds).
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

/// A configuration or data file could not be parsed or is inconsistent.
class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace alight
