#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nlc {

// Bad input: unknown keys, malformed designators, violated preconditions.
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure (eigensolver non-convergence, quadrature breakdown).
// The CLI maps this (and DivergenceError) to exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivergenceError : public NumericalError {
public:
    DivergenceError(std::int64_t step, const std::string& what)
        : NumericalError(what), step_(step) {}

    std::int64_t step() const { return step_; }

private:
    std::int64_t step_;
};

}  // namespace nlc
