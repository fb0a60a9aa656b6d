#pragma once

#include <stdexcept>

namespace meshroute {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument or configuration value violates a precondition.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A serialized document is malformed or inconsistent.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Source and destination are not connected.
class NoRouteError : public Error {
public:
    using Error::Error;
};

/// An instance is too large for exhaustive enumeration.
class SizeError : public Error {
public:
    using Error::Error;
};

}  // namespace meshroute
