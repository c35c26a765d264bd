#pragma once

#include "renyi/density.hpp"
#include "renyi/profiles.hpp"

#include <optional>
#include <string>

namespace renyi {

/// R_p(f) = log(int f^p) / (1 - p); Shannon entropy -int f log f when |p - 1| <= 1e-6.
double renyi(const Density& f, double p);
double shannon(const Density& f);

/// Fisher information int_{f>0} |grad f|^2 / f.
double fisher(const Density& f);
/// Generalized Fisher information (1 / int f^p) int_{f>0} |grad f^p|^2 / f.
double fisher_p(const Density& f, double p);

/**
 * Discrete Fisher information with its boundary-layer diagnostics.  A node
 * contributes only if its whole difference stencil lies in the numerical
 * support; nodes next to a free boundary are dropped.  dropped_mass is the
 * mass carried by the dropped nodes, a bound on how much of the density the
 * estimate ignores.
 */
struct FisherEstimate {
    double value = 0.0;
    std::size_t dropped_nodes = 0;
    double dropped_mass = 0.0;
};
FisherEstimate fisher_p_estimate(const Density& f, double p);

/// Relative Renyi entropy H_hat_p(f) = R_p(B_sigma(f)) - R_p(f) against the moment-matched profile.
double relative_renyi_hat(const Density& f, double p);
/// Same, with the matched profile supplied by the caller.
double relative_renyi_hat(const Density& f, const Density& matched, double p);

/// Two-density relative Renyi entropy H_p(f | g) (p != 1).
double relative_renyi(const Density& f, const Density& g, double p);
/// Relative Shannon entropy int f log(f / g).
double relative_shannon(const Density& f, const Density& g);

/// Newton-Ralston relative entropy F_p(f | B) = int [f^p - B^p - p B^{p-1}(f - B)] / (p - 1).
/// At p = 1 this is the relative Shannon entropy.
double ralston(const Density& f, const Density& b, double p);

struct EntropyPowers {
    double shannon_power = 0.0;  // N = exp(2 R / n)
    double renyi_power = 0.0;    // N_p = exp((2/n + p - 1) R_p)
};
EntropyPowers entropy_powers(const Density& f, double p);

/// Lambda_p(f) = R_p(f) - (n/2) log E(f); invariant under dilation.
double lambda_p(const Density& f, double p);

double l1_distance(const Density& f, const Density& g);

struct EntropyReport {
    double p = 1.0;
    double renyi_p = 0.0;
    double shannon = 0.0;
    double fisher = 0.0;
    double fisher_p = 0.0;
    double relative_renyi_hat = 0.0;
    std::optional<double> relative_renyi;  // H_p(f|g), only with a reference and when defined
    double ralston = 0.0;
    double shannon_power = 0.0;
    double renyi_power = 0.0;
    double lambda_p = 0.0;

    /// Column order of to_csv_row().
    static std::string csv_header();
    std::string to_csv_row() const;
};

/// All functionals on one normalized density.  The optional reference g feeds H_p(f|g).
EntropyReport entropy_report(const Density& f, double p, const Density* reference = nullptr);

}  // namespace renyi
