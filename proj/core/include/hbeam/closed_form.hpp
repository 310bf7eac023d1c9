#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hbeam/beam_system.hpp"
#include "hbeam/common.hpp"
#include "hbeam/density.hpp"
#include "hbeam/piecewise.hpp"

namespace hbeam {

enum class JumpCase { rho_eq_a, rho_gt_a, rho_lt_a };

const char* to_string(JumpCase c);

// Parameters of a two-step density with one pier pair. sigma is the fourth
// root of the outer density, tau that of the central one.
struct TwoStepParams {
    double alpha;
    double beta;
    Center center;
    double sigma;
    double tau;
    double delta;
    double rho;
    double a;

    static TwoStepParams make(double alpha, double beta, Center center, double a);
    // Homogeneous beam expressed as a jump at rho with equal densities.
    static TwoStepParams homogeneous(double a, double rho = 0.5);

    JumpCase jump_case() const;
    Density density() const;
    std::vector<BeamPiece> pieces() const;
};

// Jump and pier are treated as coincident when closer than this.
inline constexpr double coincidence_tolerance = 1e-12;

double det_even(double mu, const TwoStepParams& params);
double det_odd(double mu, const TwoStepParams& params);

// The 4x4 systems in the trigonometric/hyperbolic basis centred at the
// origin, entry by entry. Only defined for rho != a. Ill-conditioned once
// mu * sigma * pi grows past ~15; kept for cross-checks.
Eigen::Matrix4d printed_system_even(double mu, const TwoStepParams& params);
Eigen::Matrix4d printed_system_odd(double mu, const TwoStepParams& params);

struct EigenRoot {
    double mu;
    double lambda;
    Parity parity;
    JumpCase jump_case;
};

std::vector<EigenRoot> find_eigenvalues(const TwoStepParams& params, std::size_t count = 12,
                                        const RootScan& scan = {});

// Accepts p = 1 or any density with a single breakpoint.
std::vector<EigenRoot> find_eigenvalues(const Density& p, const PierLayout& layout,
                                        std::size_t count = 12, const RootScan& scan = {});

// Normalized eigenfunction for a root of the given parameters.
PiecewiseFunction eigenfunction_closed_form(const EigenRoot& root, const TwoStepParams& params);

}  // namespace hbeam
