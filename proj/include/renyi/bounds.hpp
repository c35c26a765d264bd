#pragma once

#include "renyi/density.hpp"
#include "renyi/evolve.hpp"

#include <span>
#include <string>
#include <vector>

namespace renyi {

/// Improved decay of the relative Shannon entropy along the heat flow:
/// -(n/2) log[1 - (1 - exp(-2 H0/n)) E0 / (E0 + 2 n t)].
double linear_bound(double H0, double E0, int n, double t);

/// Decay of the relative Renyi entropy in terms of the measured second moment:
/// -(n/2) log[1 - (1 - exp(-2 H0/n)) E0 / E_t].  Rejects E_t < E0.
double nonlinear_bound(double H0, double E0, int n, double E_t);

/// Same bound in the rescaled time: E0 / E_t replaced by exp(-2 n tau / E0).
double tau_bound(double H0, double E0, int n, double tau);

/// Plain exponential rate H0 exp(-2 n tau / E0).
double exponential_rate(double H0, double E0, int n, double tau);

enum class Theorem { LinearShannon, NonlinearRenyi };
const char* to_string(Theorem theorem);

struct DecayEntry {
    double t = 0.0;
    double tau = 0.0;
    double energy = 0.0;
    double measured = 0.0;
    double bound = 0.0;
    double slack = 0.0;  // bound - measured
};

struct DecayCurve {
    Theorem theorem = Theorem::LinearShannon;
    double p = 1.0;
    int n = 1;
    double E0 = 0.0;
    double H0 = 0.0;
    std::vector<DecayEntry> entries;

    double min_slack() const;
    /// Largest increase of the measured entropy between consecutive snapshots (0 if nonincreasing).
    double max_increase() const;
    static std::string csv_header();
    std::vector<std::string> csv_rows() const;
};

/**
 * Relative entropy against the moment-matched steady state at every snapshot
 * (relative Shannon entropy versus the Gaussian when p = 1), compared with
 * the applicable theorem.  The heat-flow bound is evaluated at the snapshot
 * time; the nonlinear bound uses the measured second moment.
 */
DecayCurve verify_decay(const Trajectory& traj, double p);

struct DecayRateReport {
    std::vector<double> taus;
    std::vector<double> derivative;  // finite-difference dH/dtau
    std::vector<double> limit;       // -(n^2/E0)(exp(2H/n) - 1)
    double max_excess = 0.0;         // max of derivative - limit
};

/// Differential form of the decay estimate along a decay curve (at least 3 entries).
DecayRateReport decay_rate_check(const DecayCurve& curve);

struct RateRow {
    double tau = 0.0;
    double improved = 0.0;     // r1
    double exponential = 0.0;  // r2
};

struct RateTable {
    double H0 = 0.0;
    double E0 = 0.0;
    int n = 1;
    std::vector<RateRow> rows;
    bool ordered = true;          // r1 <= r2 everywhere, strictly for tau > 0
    bool saturated = true;        // |r1 - r2| <= 1e-10 at tau = 0
    double max_gap = 0.0;         // max (r2 - r1)
    double tau_at_max_gap = 0.0;

    static std::string csv_header();
    std::vector<std::string> csv_rows() const;
};

/// Uniform tau grid of `count` points on [0, 10 E0 / (2n)].
std::vector<double> default_tau_grid(double E0, int n, std::size_t count = 100);

RateTable compare_rates(double H0, double E0, int n, std::span<const double> taus);

struct ConcavityReport {
    double p = 1.0;
    std::vector<double> times;
    std::vector<double> powers;
    /// Second differences divided by the local entropy power, interior snapshots.
    std::vector<double> relative_second_differences;
    double max_relative = 0.0;      // most positive (convexity) value
    double max_abs_relative = 0.0;

    bool concave(double tol) const { return max_relative <= tol; }
    bool linear(double tol) const { return max_abs_relative <= tol; }
};

/// Renyi entropy power (Shannon at p = 1) along a trajectory with uniformly spaced snapshots (at least 4).
ConcavityReport concavity_check(const Trajectory& traj, double p);

struct InequalityRow {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool applicable = true;
    /// False for rows that are reported but not asserted.
    bool asserted = true;
    /// The inequality is an identity for this input (slack expected to vanish).
    bool equality = false;
};

struct InequalityReport {
    double p = 1.0;
    std::vector<InequalityRow> rows;

    const InequalityRow& row(const std::string& name) const;
    /// Smallest slack over asserted, applicable rows.
    double min_slack() const;
    bool pass(double tol) const { return min_slack() >= -tol; }

    static std::string csv_header();
    std::vector<std::string> csv_rows() const;
};

/**
 * Signed slacks of the functional inequalities on one normalized density.
 * Slacks are written in dimensionless ratio form so one tolerance fits all:
 *
 *   log-sobolev      I/I(M) - 1 - (2/n)(R(M) - R)                   (p = 1)
 *   isoperimetric    I/I(M) - exp(-(2/n)(R - R(M)))                  (p = 1)
 *   renyi-iso        I_p/I_p(B) - exp(-(2/n + p - 1)(R_p - R_p(B)))
 *   mckean           I_p E / (n^2 int f^p) - 1
 *   ck-upper         (int B^p or int f^p) H_hat_p - F_p             (p != 1)
 *   ck-lower         F_p - (p/2) |f - B|_1^2 / int max(f,B)^{2-p}     (p <= 2)
 *   relative-order   H_hat_p - H_p(f|B)                             (when H_p is defined)
 *   nonnegativity    H_hat_p
 *   ck-constant      H_hat_p / |f - B|_1^2                           (reported only)
 *
 * with M and B the Gaussian and steady profile of the same second moment,
 * and I_p(B) = n / sigma taken in closed form.
 */
InequalityReport inequality_suite(const Density& f, double p);

}  // namespace renyi
