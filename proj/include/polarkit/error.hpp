#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polarkit {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arguments that violate an operation's preconditions.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two fields that are not related by a subfield embedding.
class IncompatibleFields : public Error {
public:
    IncompatibleFields() : Error("incompatible fields") {}
    explicit IncompatibleFields(const std::string& what) : Error("incompatible fields: " + what) {}
};

/// A computation whose size exceeds the configured budget.
class CapacityExceeded : public Error {
public:
    using Error::Error;
};

/// A generator that does not preserve the form up to a multiplier and a field automorphism.
class FormInvarianceError : public Error {
public:
    FormInvarianceError(std::size_t generator_index, const std::string& detail)
        : Error("generator " + std::to_string(generator_index) + " does not preserve the form: " + detail),
          index_(generator_index) {}

    std::size_t generator_index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace polarkit
