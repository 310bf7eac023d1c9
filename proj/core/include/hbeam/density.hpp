#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hbeam {

struct Interval {
    double lo;
    double hi;
    double length() const { return hi - lo; }
};

enum class Center { heavy, light };

// Symmetric piecewise-constant density on (-pi, pi). Only the half-beam
// [0, pi] is stored: values[i] holds on [breakpoints[i-1], breakpoints[i]).
class Density {
public:
    static constexpr double mass_tolerance = 1e-12;

    // Validated constructor: throws std::invalid_argument on any violation.
    static Density create(double alpha, double beta, std::vector<double> breakpoints,
                          std::vector<double> values);
    // No validation; for hand-built test cases checked through violations().
    static Density unchecked(double alpha, double beta, std::vector<double> breakpoints,
                             std::vector<double> values);
    // p = 1 everywhere with the given admissible bounds.
    static Density constant(double alpha = 1.0, double beta = 1.0);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t jumps() const { return breakpoints_.size(); }

    // Value at x in [-pi, pi]; at a breakpoint the left piece wins.
    double eval(double x) const;
    double mass() const;
    bool is_bang_bang() const;
    bool is_homogeneous() const { return values_.size() == 1 && values_[0] == 1.0; }

    // Empty when the density is admissible.
    std::vector<std::string> violations() const;

    bool operator==(const Density&) const = default;

private:
    Density(double alpha, double beta, std::vector<double> breakpoints,
            std::vector<double> values);

    double alpha_;
    double beta_;
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

struct PierLayout {
    double a;

    explicit PierLayout(double a_value);
    double pier() const;
};

double heavy_half_measure(double alpha, double beta);
double two_step_rho(double alpha, double beta, Center center);

Density make_two_step(double alpha, double beta, Center center);

// Bang-bang density with beta on heavy_set (subset of (0, pi)) and alpha
// elsewhere. The set length must equal pi(1-alpha)/(beta-alpha) within
// length_tolerance; the largest free endpoint is then nudged so the mass is
// exact.
Density from_indicator(double alpha, double beta, std::vector<Interval> heavy_set,
                       double length_tolerance = 1e-9);

std::string to_json(const Density& p);
Density density_from_json(const std::string& text);

}  // namespace hbeam
