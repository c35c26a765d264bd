#pragma once

#include "renyi/density.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace renyi {

enum class ProfileKind { Gaussian, BarenblattFD, BarenblattPME };

const char* to_string(ProfileKind kind);

/// n / (n + 2): below it the Barenblatt profile has infinite second moment.
double critical_exponent(int n);
bool admissible_exponent(double p, int n);
/// Throws InadmissibleExponent unless p > n/(n+2).
void require_admissible(double p, int n);

/// The p = 1 dispatch window: exponents this close to 1 use the Shannon/Gaussian branch.
inline constexpr double shannon_window = 1e-6;
inline bool is_shannon(double p) { return std::abs(p - 1.0) <= shannon_window; }

/**
 * Steady state of the second-moment-scaled Fokker-Planck flow.
 *
 *   Gaussian (p = 1):      c_b exp(-|y|^2 / (2 sigma)),  c_b = (2 pi sigma)^{-n/2}
 *   fast diffusion (p<1):  (c_b + (1-p)/p |y|^2/(2 sigma))^{1/(p-1)}
 *   porous medium (p>1):   (c_b - (p-1)/p |y|^2/(2 sigma))_+^{1/(p-1)}
 *
 * lambda = 2 - n(1 - p) is the self-similar exponent of the Barenblatt
 * solution; the profile coincides with that solution at time sigma / lambda.
 */
struct SteadyProfile {
    double p = 1.0;
    int n = 1;
    double c_b = 1.0;
    double sigma = 1.0;
    double lambda = 2.0;
    ProfileKind kind = ProfileKind::Gaussian;
    double energy = 1.0;  // E0 the profile was matched to

    double value(double r) const;
    /// Edge of the support; +inf unless kind == BarenblattPME.
    double support_radius() const;
    /// Closed-form continuation past the grid (fast diffusion only).
    std::optional<PowerTail> tail() const;
};

/// Samples the closed form (and attaches the tail) on a grid.
Density sample_profile(const SteadyProfile& profile, const GridPtr& grid);

struct MatchedProfile {
    SteadyProfile profile;
    Density density;
    /// sigma * int B^p - E0/n, the residual of the sigma-selection identity on this grid.
    double identity_residual = 0.0;
    /// Share of the mass carried by the analytic tail, and its quadrature error estimate.
    double tail_mass = 0.0;
    double tail_error = 0.0;
    int iterations = 0;
};

MatchedProfile gaussian_matched(int n, double target_energy, const GridPtr& grid);

struct MatchOptions {
    /// Starting point (c_b, sigma) for the Newton iteration; defaults to the Gaussian limit.
    std::optional<std::pair<double, double>> initial_guess;
    double tolerance = 1e-12;
    int max_iterations = 80;
};

/**
 * Barenblatt profile with unit mass and second moment target_energy on the
 * given grid.  Solves for (c_b, sigma) by damped Newton on the discrete
 * log-residuals (log mass, log energy - log E0) with a finite-difference
 * Jacobian.  In log variables both residuals are affine in the continuum
 * limit, so the iteration is close to a single linear solve.
 */
MatchedProfile barenblatt_matched(double p, int n, double target_energy, const GridPtr& grid,
                                  const MatchOptions& options = {});

/// Gaussian for p within the Shannon window, Barenblatt otherwise.
MatchedProfile matched_profile(double p, int n, double target_energy, const GridPtr& grid);

/**
 * Self-similar Barenblatt slice: the base profile dilated by a = t^{-1/lambda},
 * so t = 1 returns the base profile.  Tail-free slices are rescaled to unit
 * discrete mass (an O(h^2) change).  Between clock values t1 < t2 the
 * solution of v_t = Delta v^p advances by (sigma / lambda) (t2 - t1).
 */
Density selfsimilar_barenblatt(const SteadyProfile& profile, double t, const GridPtr& grid);

struct PhiReport {
    double p = 0.0;
    std::vector<double> sigmas;
    std::vector<double> phi;
    bool expect_increasing = true;
    bool monotone = false;
};

/// phi_p(sigma) = sigma int Bbar_sigma^p along Bbar_sigma(y) = sigma^{-(n+2)/2} Bbar(y / sqrt(sigma)).
PhiReport phi_monotonicity_check(double p, int n, const GridPtr& grid, std::span<const double> sigmas);

}  // namespace renyi
