#pragma once

#include "renyi/density.hpp"
#include "renyi/profiles.hpp"

#include <cstddef>
#include <vector>

namespace renyi {

enum class Scheme { ExplicitFV };

struct SolverConfig {
    double p = 1.0;
    int n = 1;
    Scheme scheme = Scheme::ExplicitFV;
    double cfl = 0.4;
    double t_end = 1.0;
    /// Sorted, within [0, t_end].  t = 0 is always recorded first.
    std::vector<double> snapshot_times;
    /// Relative floor (times max v0) below which fast-diffusion values are clamped.
    double value_floor = 1e-13;
};

/// Evenly spaced snapshot times 0, t_end/count, ..., t_end.
std::vector<double> uniform_times(double t_end, std::size_t count);

enum class Provenance { Numerical, ExactGaussian, ExactBarenblatt };
const char* to_string(Provenance provenance);

struct Snapshot {
    double t = 0.0;
    Density density;
    double energy = 0.0;
};

struct SolverStats {
    std::size_t steps = 0;
    /// Node updates that fell below the value floor and were clamped.
    std::size_t clamped = 0;
    /// Bounds on the mass and second moment injected by clamping.
    double floor_mass = 0.0;
    double floor_energy = 0.0;
    double max_mass_drift = 0.0;
};

struct Trajectory {
    SolverConfig config;
    std::vector<Snapshot> snapshots;
    Provenance provenance = Provenance::Numerical;
    SolverStats stats;

    std::vector<double> times() const;
    std::vector<double> energies() const;
};

/**
 * Explicit finite-volume solve of v_t = Laplacian(v^p).
 *
 * Control volumes are the grid's quadrature weights and the scheme is
 * conservative in the same quadrature, so the trapezoid mass is constant up
 * to rounding.  Face areas on radial grids are chosen so that the discrete
 * Laplacian of |x|^2 is exactly 2n at every node.  When the weight of the
 * origin node vanishes (radial, n >= 2) that node carries no mass and is
 * filled by even quadratic extrapolation from its neighbours.
 *
 * The time step is cfl h^2 / (2 n max(p v^{p-1})), shortened to land exactly
 * on every snapshot time.  v0 must be a tail-free probability density with
 * zero mean.
 */
Trajectory solve(const Density& v0, const SolverConfig& config);

/// Face areas A_{i+1/2} between nodes i and i+1 of the finite-volume scheme.
/// Radially A r = n * (control volume up to node i), exact on |x|^2.
std::vector<double> face_areas(const Grid& grid);

struct EnergyRateReport {
    std::vector<double> times;
    std::vector<double> measured;   // finite-difference dE/dt
    std::vector<double> predicted;  // 2n int v^p
    double max_relative_mismatch = 0.0;
};

/// Compares dE/dt at interior snapshots with 2n int v^p.
EnergyRateReport energy_rate_check(const Trajectory& traj);

struct GaussianParams {
    int n = 1;
    double variance = 1.0;  // per coordinate
    double mean = 0.0;      // Line1D only
    double weight = 1.0;
};

/// Heat flow of a Gaussian: variance grows as variance + 2t.
Trajectory exact_heat(const GridPtr& grid, const GaussianParams& v0, const std::vector<double>& times);

/// Heat flow of a Gaussian mixture (each component spreads independently).
/// On radial grids the components must be centred; weights must sum to 1.
Trajectory exact_heat_mixture(const GridPtr& grid, const std::vector<GaussianParams>& components,
                              const std::vector<double>& times);

/// Sampled Gaussian mixture (weights summing to 1) on a grid.
Density gaussian_mixture(const GridPtr& grid, const std::vector<GaussianParams>& components);

/**
 * Barenblatt solution started from the steady profile: the profile B_sigma is
 * the self-similar solution at its own time sigma / lambda, so physical time t
 * corresponds to the self-similar clock 1 + t lambda / sigma.
 */
Trajectory exact_barenblatt(const SteadyProfile& profile, const GridPtr& grid, const std::vector<double>& times);

double barenblatt_clock(const SteadyProfile& profile, double t);

}  // namespace renyi
