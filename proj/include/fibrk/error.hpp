#ifndef FIBRK_ERROR_HPP
#define FIBRK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fibrk {

// Failure categories surfaced by the library. Schema problems found while
// loading input files use SchemaError below so the CLI can map them to a
// distinct exit code.
enum class ErrorKind {
    ZeroDivisor,
    MixedVariableDivision,
    ZeroPolynomial,
    DegreeMismatch,
    MissingIntersectionNumber,
    DegenerateVolume,
    DegreeOverflow,
    DimensionMismatch,
    PreconditionUnverifiable,
    InsufficientComponents,
    IndexOutOfRange,
    ValidationFailed,
    UnknownVariable,
    UnknownClass,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Input-file problem with a JSON pointer to the offending field.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string pointer, std::string message)
        : std::runtime_error(pointer + ": " + message),
          pointer_(std::move(pointer)) {}

    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

}  // namespace fibrk

#endif
