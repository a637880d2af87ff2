#pragma once

#include <stdexcept>
#include <string>

namespace htype {

/// Invalid input shape or value (maps to the CLI config-error exit code).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dimension mismatch between operands.
class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// A request would exceed a configured size cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quadrature, root-finder or eigen-solver failure.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& what, double achieved = -1.0)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

}  // namespace htype
