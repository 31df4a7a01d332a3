// Error types shared across the library.
#pragma once
#include <stdexcept>
#include <string>

namespace nmrom {

// Bad sizes, grid mismatches, inconsistent plans.
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed files. Carries the byte offset where parsing failed.
struct FormatError : std::runtime_error {
    std::size_t byte_offset;
    FormatError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
          byte_offset(offset) {}
};

// Bad configuration values.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Solver divergence, rank deficiency, NaN losses.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nmrom
