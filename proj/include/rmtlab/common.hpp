#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rmtlab {

using cd = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cd kI{0.0, 1.0};

// Raised for violated preconditions and numerical failures that the caller
// must see (non-convergence, non-normalizable input, budget exhaustion).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Build identification string baked in at configure time.
const char* git_describe();

}  // namespace rmtlab
