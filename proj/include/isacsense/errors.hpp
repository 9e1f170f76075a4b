#pragma once

#include <stdexcept>
#include <string>

namespace isacsense {

/// Raised for malformed configuration input: unknown keys, unparseable
/// values, or parameter sets that fail validation.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a request asks for a quantity the selected model does not
/// define (for example a mean-relative threshold under an infinite-mean law).
struct undefined_error : std::runtime_error {
    explicit undefined_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an iterative numerical routine exhausts its budget before
/// reaching the requested tolerance. The message names the knob to loosen.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace isacsense
