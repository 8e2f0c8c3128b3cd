#ifndef SUPERSEL_ERRORS_HPP
#define SUPERSEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace supersel {

// Every failure mode of the library maps to one of these types, so callers
// and tests can discriminate without parsing messages.

struct DimMismatchError : std::invalid_argument {
    explicit DimMismatchError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct NotHermitianError : std::invalid_argument {
    explicit NotHermitianError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct NotUnitaryError : std::invalid_argument {
    explicit NotUnitaryError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct NotNormalizedError : std::invalid_argument {
    explicit NotNormalizedError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct BadDimensionError : std::invalid_argument {
    explicit BadDimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct UnknownElementError : std::out_of_range {
    explicit UnknownElementError(const std::string& msg) : std::out_of_range(msg) {}
};

struct MixedActionKindsError : std::invalid_argument {
    explicit MixedActionKindsError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct StatesDontSpanError : std::invalid_argument {
    explicit StatesDontSpanError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct PreconditionViolatedError : std::invalid_argument {
    explicit PreconditionViolatedError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct EmptyCommutantError : std::runtime_error {
    explicit EmptyCommutantError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnresolvedReferenceError : std::runtime_error {
    explicit UnresolvedReferenceError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FlagViolationError : std::runtime_error {
    explicit FlagViolationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace supersel

#endif
