#pragma once

#include <stdexcept>
#include <string>

namespace cycert {

// Base class for all errors raised by the library. Mathematical negative
// results (a rejected smoothing, a singular fiber) are reported as values,
// not exceptions; exceptions are reserved for misuse and bad input.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct IncompatibleFieldError : Error {
    explicit IncompatibleFieldError(const std::string& msg) : Error(msg) {}
};

struct DivisionByZeroError : Error {
    explicit DivisionByZeroError(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

struct InvalidConeError : Error {
    explicit InvalidConeError(const std::string& msg) : Error(msg) {}
};

struct UnboundedPolytopeError : Error {
    explicit UnboundedPolytopeError(const std::string& msg) : Error(msg) {}
};

struct OptimizerError : Error {
    OptimizerError(const std::string& msg, double x, double y, double grad_norm)
        : Error(msg), last_x(x), last_y(y), last_grad_norm(grad_norm) {}
    double last_x, last_y, last_grad_norm;
};

struct NotQuasiHomogeneousError : Error {
    explicit NotQuasiHomogeneousError(const std::string& msg) : Error(msg) {}
};

struct InvalidWeightsError : Error {
    explicit InvalidWeightsError(const std::string& msg) : Error(msg) {}
};

struct ChartInvalidityError : Error {
    ChartInvalidityError(const std::string& msg, std::string monomial)
        : Error(msg), offending_monomial(std::move(monomial)) {}
    std::string offending_monomial;
};

struct IncompleteInputError : Error {
    explicit IncompleteInputError(const std::string& msg) : Error(msg) {}
};

struct ConfigurationError : Error {
    explicit ConfigurationError(const std::string& msg) : Error(msg) {}
};

}  // namespace cycert
