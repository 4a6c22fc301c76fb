#pragma once

#include <stdexcept>
#include <string>

namespace isospec {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

class UnsupportedShape : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// Two eigenvalue clusters are too close to tell a repeated eigenvalue from
/// a pair of nearby ones.
class ClusterAmbiguity : public Error {
public:
    using Error::Error;
};

class NotAnEigenvalue : public Error {
public:
    using Error::Error;
};

class UnknownName : public Error {
public:
    using Error::Error;
};

/// Malformed user input (files, grid strings, flags).
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace isospec
