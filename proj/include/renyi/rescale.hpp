#pragma once

#include "renyi/density.hpp"
#include "renyi/evolve.hpp"

#include <vector>

namespace renyi {

/// tau = (E0 / 2n) log(E / E0).
double tau_of_energy(double energy, double initial_energy, int n);

/// Time change for each snapshot, with E0 the energy of the first one.
std::vector<double> tau_of_t(const Trajectory& traj);

struct ScaledEntry {
    double t = 0.0;
    double tau = 0.0;
    /// sqrt(E_k / E0): u_k = dilate(v_k, dilation).
    double dilation = 1.0;
    Density u;
};

struct ScaledTrajectory {
    SolverConfig config;
    Provenance provenance = Provenance::Numerical;
    double E0 = 0.0;
    std::vector<ScaledEntry> entries;
};

/**
 * u_k(y) = a^n v_k(a y) with a = sqrt(E_k / E0).  The factor is refined
 * (as in normalize) so the discrete moments of u_k are exactly (1, 0, E0);
 * since E_k >= E0 the dilation only compresses and nothing leaves the grid.
 */
ScaledTrajectory to_scaled(const Trajectory& traj);

struct StationarityReport {
    std::vector<double> taus;
    /// L1 norm of the right-hand side Laplacian(u^p)/int u^p + (n/E0) div(y u), per entry.
    std::vector<double> rhs_l1;
    /// L1 norm of du/dtau minus the right-hand side, per interior entry.
    std::vector<double> residual_l1;
    double max_rhs_l1 = 0.0;
    double max_residual_l1 = 0.0;
};

/// Checks the scaled Fokker-Planck equation along a scaled trajectory (at least 3 entries).
StationarityReport stationarity_residual(const ScaledTrajectory& scaled, double p);

/// Discrete right-hand side of the scaled equation at every node of u.
std::vector<double> scaled_rhs(const Density& u, double p, double E0);

}  // namespace renyi
