#pragma once

#include <stdexcept>
#include <string>

namespace cocite {

// Base for every error the toolkit raises on invalid input or state.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace cocite
