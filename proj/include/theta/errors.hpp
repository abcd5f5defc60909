#pragma once

#include <stdexcept>
#include <string>

namespace theta {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BoundaryDegeneracy : public Error {
public:
    using Error::Error;
};

class NotInCone : public Error {
public:
    using Error::Error;
};

class GeneralPositionViolation : public Error {
public:
    using Error::Error;
};

class InvalidInstance : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class UnsupportedConeCount : public Error {
public:
    using Error::Error;
};

class AlphaOutOfRange : public Error {
public:
    using Error::Error;
};

class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace theta
