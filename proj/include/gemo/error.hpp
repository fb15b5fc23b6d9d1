#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gemo {

/// Base of every library error. `stage()` names the pipeline step that failed
/// (e.g. "expr.parse", "pct.inverse_map") so the CLI can report it verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string stage, const std::string& message)
        : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}

    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// Malformed expression text. `offset()` is the 1-based byte position of the
/// offending character (length + 1 for unexpected end of input).
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : Error("expr.parse", message + " at offset " + std::to_string(offset)), offset_(offset) {}

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation outside the mathematical domain: division by zero, non-finite
/// intermediates, out-of-domain coordinates.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A requested value lies outside the image/range of a map or grid.
class RangeError : public Error {
public:
    using Error::Error;
};

/// An iterative method (quadrature, Newton, inverse iteration) did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Invalid argument or configuration.
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace gemo
