#pragma once

#include <stdexcept>
#include <string>

namespace ineqforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the region where a map or functional is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

// Family or numerical parameter violating a documented constraint.
class ParameterError : public Error {
public:
    using Error::Error;
};

class IntegrabilityError : public Error {
public:
    using Error::Error;
};

class InitializationError : public Error {
public:
    using Error::Error;
};

class AssemblyError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace ineqforge
