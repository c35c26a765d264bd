#pragma once

#include "renyi/density.hpp"
#include "renyi/evolve.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace renyi {

/**
 * Initial data and random test densities.  Every constructor returns a
 * density with mass 1, mean 0 and second moment target_energy, built
 * analytically where possible so no interpolation enters.
 */

/// Two Gaussian bumps 0.5 N(-d, s) + 0.5 N(d, s) with d^2 = 0.8 E0, s = 0.2 E0.
/// On radial grids: a scale mixture of two centred Gaussians.
std::vector<GaussianParams> two_bump_components(int n, double target_energy, bool radial);
Density two_bump(const GridPtr& grid, double target_energy);

/// Uniform density on the centred interval (ball) with the given second moment.
Density uniform_box(const GridPtr& grid, double target_energy);

/**
 * 0.7 B + 0.3 g with B the matched steady profile restricted to the grid
 * (no tail) and g a two-bump density whose spread makes the total second
 * moment exactly target_energy.
 */
Density perturbed_barenblatt(double p, const GridPtr& grid, double target_energy);

/// Mixture of 2 to 4 Gaussians: means uniform in [-1.5, 1.5] (0 on radial grids),
/// variances in [0.1, 1], random weights; rescaled analytically to the moments.
std::vector<GaussianParams> random_mixture_components(int n, bool radial, double target_energy,
                                                      std::mt19937_64& rng);
Density random_mixture(const GridPtr& grid, double target_energy, std::mt19937_64& rng);

/// Shift and dilate mixture components so that the mixture has mean 0 and energy target_energy.
std::vector<GaussianParams> normalize_components(std::vector<GaussianParams> components, double target_energy);

}  // namespace renyi
