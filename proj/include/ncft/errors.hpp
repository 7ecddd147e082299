#pragma once

#include <stdexcept>
#include <string>

namespace ncft {

// Malformed data: bad words, shape mismatches, out-of-range arguments.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// The request is well formed but outside the range where the numerics are
// meaningful (divergent series, non-contractive tuples, singular solves).
class ScopeError : public std::runtime_error {
public:
    explicit ScopeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ncft
