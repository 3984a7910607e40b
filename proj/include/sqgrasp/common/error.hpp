#pragma once

#include <stdexcept>
#include <string>

namespace sqgrasp {

/// Malformed input stream (mesh parse failures, bad binary headers).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration value (out-of-range resolution, bad flags).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input carried no usable data (empty mesh after cleaning).
class EmptyInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Grid has no interior voxels to decompose.
class EmptyObjectError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Too few samples to constrain a fit.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure; carries whatever diagnostic the thrower attaches.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Query outside a grid's interpolation domain; carries the value obtained
/// by clamping the query point onto the domain boundary.
class OutOfDomainError : public std::runtime_error {
public:
    OutOfDomainError(const std::string& what, double clamped)
        : std::runtime_error(what), clamped_value_(clamped) {}
    double clamped_value() const { return clamped_value_; }

private:
    double clamped_value_;
};

}  // namespace sqgrasp
