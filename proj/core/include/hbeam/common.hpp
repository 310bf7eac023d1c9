#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace hbeam {

inline constexpr double pi = std::numbers::pi;

// Raised when a solver cannot deliver a trustworthy result (missed roots,
// degenerate null spaces, energy drift). Configuration problems use
// std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

// Sign picked up by the d-th derivative of a function of the given parity
// under x -> -x.
inline double reflection_sign(Parity p, int d) {
    double s = (p == Parity::odd) ? -1.0 : 1.0;
    return (d % 2 == 0) ? s : -s;
}

}  // namespace hbeam
