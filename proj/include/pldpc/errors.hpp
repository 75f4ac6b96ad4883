#ifndef PLDPC_ERRORS_HPP
#define PLDPC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pldpc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Asset file missing or malformed.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Argument outside an operation's domain (lengths, signs, ranges).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// Rate not reachable by node appending or column truncation.
class UnsupportedRate : public Error {
public:
    using Error::Error;
};

// Shift/permutation assignment does not cover the protograph or collides.
class InvalidAssignment : public Error {
public:
    using Error::Error;
};

// (N, R, seed) combination cannot produce a code.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

// Optimizer exhausted its budget without a usable genome.
class ConstructionFailure : public Error {
public:
    using Error::Error;
};

// Operation requires circulant structure the matrix does not have.
class UnsupportedStructure : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace pldpc

#endif
