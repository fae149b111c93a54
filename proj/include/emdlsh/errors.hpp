#pragma once

#include <stdexcept>
#include <string>

namespace emdlsh {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape, dimension or mode mismatch; out-of-domain coordinates.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// Parameters violating a construction precondition.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Exhaustive oracle asked to enumerate beyond its guard.
class OracleSizeError : public Error {
public:
    using Error::Error;
};

// Tree keys that do not describe a parent/child edge, or a digest collision.
class StructuralError : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace emdlsh
