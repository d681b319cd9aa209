#pragma once

#include <stdexcept>
#include <string>

namespace declab {

// Length/shape mismatch between vectors or matrices.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Bad experiment or component configuration (unknown code name, wrong
// decoder/input pairing, unusable parameter).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric argument outside its mathematical domain.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// File read/write failure, message carries the path.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace declab
