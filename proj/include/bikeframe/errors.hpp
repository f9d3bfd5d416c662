#pragma once

#include <stdexcept>
#include <string>

namespace bikeframe {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Precondition violated on a numeric argument.
class DomainError : public Error {
public:
    using Error::Error;
};

// The frame cannot be constructed from its parameters.
class BuildFailure : public Error {
public:
    using Error::Error;
};

class DegenerateTube : public Error {
public:
    using Error::Error;
};

// Non-positive pivot while factorizing the reduced stiffness matrix.
class SingularSystem : public Error {
public:
    using Error::Error;
};

class MissingLabel : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

}  // namespace bikeframe
