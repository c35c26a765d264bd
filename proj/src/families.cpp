#include "renyi/families.hpp"

#include "renyi/error.hpp"
#include "renyi/profiles.hpp"

#include <cmath>

namespace renyi {

std::vector<GaussianParams> normalize_components(std::vector<GaussianParams> components, double target_energy)
{
    if (!(target_energy > 0.0))
        throw Error(ErrorCode::InvalidArgument, "target energy must be positive");
    double total = 0.0;
    double mean = 0.0;
    for (const auto& c : components) {
        total += c.weight;
        mean += c.weight * c.mean;
    }
    if (!(total > 0.0))
        throw Error(ErrorCode::ZeroMass, "zero mass: mixture weights vanish");
    mean /= total;
    double energy = 0.0;
    for (auto& c : components) {
        c.weight /= total;
        c.mean -= mean;
        energy += c.weight * (c.n * c.variance + c.mean * c.mean);
    }
    const double a = std::sqrt(energy / target_energy);
    for (auto& c : components) {
        c.mean /= a;
        c.variance /= a * a;
    }
    return components;
}

std::vector<GaussianParams> two_bump_components(int n, double target_energy, bool radial)
{
    if (radial) {
        return {{n, 0.4 * target_energy / n, 0.0, 0.5}, {n, 1.6 * target_energy / n, 0.0, 0.5}};
    }
    const double d = std::sqrt(0.8 * target_energy);
    const double s = 0.2 * target_energy;
    return {{1, s, -d, 0.5}, {1, s, d, 0.5}};
}

Density two_bump(const GridPtr& grid, double target_energy)
{
    if (!(target_energy > 0.0))
        throw Error(ErrorCode::InvalidArgument, "target energy must be positive");
    return normalize(gaussian_mixture(grid, two_bump_components(grid->dim(), target_energy, grid->radial())),
                     target_energy);
}

Density uniform_box(const GridPtr& grid, double target_energy)
{
    if (!(target_energy > 0.0))
        throw Error(ErrorCode::InvalidArgument, "target energy must be positive");
    const int n = grid->dim();
    const double radius = std::sqrt((n + 2.0) * target_energy / n);
    if (radius >= grid->extent())
        throw Error(ErrorCode::GridTooSmall, "grid too small for the uniform box");
    std::vector<double> values(grid->size());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = grid->radius(i) <= radius ? 1.0 : 0.0;
    return normalize(Density(grid, std::move(values)), target_energy);
}

Density perturbed_barenblatt(double p, const GridPtr& grid, double target_energy)
{
    const int n = grid->dim();
    const Density b = matched_profile(p, n, target_energy, grid).density.without_tail();
    const double bulk = b.energy() / b.mass();
    const double spread = (target_energy - 0.7 * bulk) / 0.3;
    if (!(spread > 0.0))
        throw Error(ErrorCode::InvalidArgument, "cannot balance the perturbation's second moment");
    const Density g = gaussian_mixture(grid, two_bump_components(n, spread, grid->radial()));

    std::vector<double> values(grid->size());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = 0.7 * b[i] / b.mass() + 0.3 * g[i] / g.mass();
    return normalize(Density(grid, std::move(values)), target_energy);
}

std::vector<GaussianParams> random_mixture_components(int n, bool radial, double target_energy,
                                                      std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> count(2, 4);
    std::uniform_real_distribution<double> mean(-1.5, 1.5);
    std::uniform_real_distribution<double> variance(0.1, 1.0);
    std::uniform_real_distribution<double> weight(0.2, 1.0);
    std::vector<GaussianParams> out(static_cast<std::size_t>(count(rng)));
    for (auto& c : out) {
        c.n = n;
        c.mean = mean(rng);
        c.variance = variance(rng);
        c.weight = weight(rng);
        if (radial)
            c.mean = 0.0;
    }
    return normalize_components(std::move(out), target_energy);
}

Density random_mixture(const GridPtr& grid, double target_energy, std::mt19937_64& rng)
{
    auto comps = random_mixture_components(grid->dim(), grid->radial(), target_energy, rng);
    return normalize(gaussian_mixture(grid, comps), target_energy);
}

}  // namespace renyi
