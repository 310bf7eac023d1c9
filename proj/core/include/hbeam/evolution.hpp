#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hbeam/galerkin.hpp"

namespace hbeam {

// c_j'' + lambda_j c_j + (sum_k c_k^2) c_j = 0 on the first n modes.
struct ModalSystem {
    Eigen::VectorXd lambda;

    static ModalSystem from_spectrum(const WeightedSpectrum& spec, std::size_t n);
    Eigen::Index size() const { return lambda.size(); }
};

struct ModalState {
    Eigen::VectorXd c;
    Eigen::VectorXd cdot;
    double t = 0.0;
};

struct ModalRates {
    Eigen::VectorXd dc;
    Eigen::VectorXd dcdot;
};

// p-weighted projections of u(0) = g, u_t(0) = h onto the first n modes.
ModalState project_initial(const WeightedSpectrum& spec, std::size_t n,
                           const std::function<double(double)>& g,
                           const std::function<double(double)>& h);
// Initial data already given as mode weights (missing entries are zero).
ModalState project_initial(std::span<const double> g_weights, std::span<const double> h_weights,
                           std::size_t n);

ModalRates step_rhs(const ModalSystem& sys, const ModalState& s);

double total_energy(const ModalSystem& sys, const ModalState& s);
// 1/2 cdot_j^2 + 1/2 lambda_j c_j^2 for each mode.
Eigen::VectorXd mode_energies(const ModalSystem& sys, const ModalState& s);

struct Trajectory {
    std::vector<double> t;
    std::vector<Eigen::VectorXd> c;
    std::vector<Eigen::VectorXd> cdot;
    std::vector<double> energy;
    std::vector<Eigen::VectorXd> mode_energy;
    double max_relative_drift = 0.0;
    ModalState final_state;
};

struct SimulateOptions {
    std::size_t record_every = 1;
    bool check_drift = true;
    double drift_tolerance = 1e-6;
    // Integration stops after the first step for which this returns true.
    std::function<bool(const ModalState&)> stop;
};

// Fixed step 4th-order symmetric composition of velocity Verlet.
Trajectory simulate(const ModalSystem& sys, const ModalState& s0, double t_end, double dt,
                    const SimulateOptions& options = {});

// One composed step; exposed for reversibility checks.
void yoshida_step(const ModalSystem& sys, ModalState& s, double dt);

// T_min / 512, with T_min the shortest period at the state's amplitude.
double default_time_step(const ModalSystem& sys, const ModalState& s);

struct BimodalResult {
    double transfer;          // max over time of the z-mode energy fraction
    double initial_fraction;  // z-mode energy fraction at t = 0
    double growth;            // transfer / initial_fraction (0 when z0 = 0)
    double periods_run;       // in units of the prevailing Duffing period
    bool grew;                // stopped on a tenfold growth
    double max_relative_drift;
    double max_abs_z;
};

// Prevailing mode lambda with amplitude zeta, residual mode nu with z0.
// Runs for `periods` prevailing periods or until the z fraction grows tenfold.
BimodalResult bimodal_experiment(double lambda, double nu, double zeta, double z0,
                                 double periods = 200.0);

}  // namespace hbeam
