#include "renyi/evolve.hpp"

#include "renyi/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace renyi {

std::vector<double> uniform_times(double t_end, std::size_t count)
{
    if (count == 0 || !(t_end > 0.0))
        throw Error(ErrorCode::InvalidArgument, "uniform_times needs t_end > 0 and count >= 1");
    std::vector<double> out(count + 1);
    for (std::size_t k = 0; k <= count; ++k)
        out[k] = t_end * static_cast<double>(k) / static_cast<double>(count);
    out.back() = t_end;
    return out;
}

const char* to_string(Provenance provenance)
{
    switch (provenance) {
    case Provenance::Numerical: return "numerical";
    case Provenance::ExactGaussian: return "exact-gaussian";
    case Provenance::ExactBarenblatt: return "exact-barenblatt";
    }
    return "?";
}

std::vector<double> Trajectory::times() const
{
    std::vector<double> out;
    out.reserve(snapshots.size());
    for (const auto& s : snapshots)
        out.push_back(s.t);
    return out;
}

std::vector<double> Trajectory::energies() const
{
    std::vector<double> out;
    out.reserve(snapshots.size());
    for (const auto& s : snapshots)
        out.push_back(s.energy);
    return out;
}

namespace {

std::vector<double> checked_times(std::vector<double> times, double t_end)
{
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw Error(ErrorCode::InvalidArgument, "t_end must be positive");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] >= 0.0) || times[k] > t_end)
            throw Error(ErrorCode::InvalidArgument, "snapshot times must lie in [0, t_end]");
        if (k > 0 && !(times[k] > times[k - 1]))
            throw Error(ErrorCode::InvalidArgument, "snapshot times must be strictly increasing");
    }
    if (times.empty() || times.front() > 0.0)
        times.insert(times.begin(), 0.0);
    if (times.back() < t_end)
        times.push_back(t_end);
    return times;
}

}  // namespace

std::vector<double> face_areas(const Grid& grid)
{
    const std::size_t m = grid.size();
    std::vector<double> area(m - 1, 1.0);
    if (!grid.radial())
        return area;
    const auto w = grid.weights();
    const auto r = grid.nodes();
    double volume = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        volume += w[i];
        area[i] = grid.dim() * volume / (0.5 * (r[i] + r[i + 1]));
    }
    return area;
}

Trajectory solve(const Density& v0, const SolverConfig& config)
{
    const Grid& grid = v0.grid();
    require_admissible(config.p, config.n);
    if (config.n != grid.dim())
        throw Error(ErrorCode::InvalidArgument, "solver dimension does not match the grid");
    if (!(config.cfl > 0.0) || config.cfl > 1.0)
        throw Error(ErrorCode::InvalidArgument, "cfl must lie in (0, 1]");
    if (!(config.value_floor >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "value_floor must be nonnegative");
    if (v0.tail())
        throw Error(ErrorCode::InvalidArgument, "the solver works on tail-free densities; drop the tail first");
    if (std::abs(v0.mass() - 1.0) > 1e-6 || std::abs(v0.mean()) > 1e-6 * grid.extent())
        throw Error(ErrorCode::InvalidArgument, "initial datum must be normalized (mass 1, mean 0)");

    Trajectory traj;
    traj.config = config;
    traj.config.snapshot_times = checked_times(config.snapshot_times, config.t_end);
    traj.provenance = Provenance::Numerical;
    const auto& times = traj.config.snapshot_times;

    const double p = config.p;
    const int n = config.n;
    const std::size_t m = grid.size();
    const double h = grid.spacing();
    const auto weight = grid.weights();
    const auto area = face_areas(grid);
    const std::size_t first = weight[0] > 0.0 ? 0 : 1;
    const double floor = p < 1.0 ? config.value_floor * v0.max_value() : 0.0;
    const double mass0 = v0.mass();

    std::vector<double> v(v0.values().begin(), v0.values().end());
    std::vector<double> w(m);
    std::vector<double> flux(m - 1, 0.0);
    if (p < 1.0) {
        for (std::size_t i = first; i < m; ++i) {
            if (v[i] < floor) {
                traj.stats.floor_mass += weight[i] * (floor - v[i]);
                traj.stats.floor_energy += weight[i] * grid.radius(i) * grid.radius(i) * (floor - v[i]);
                v[i] = floor;
                ++traj.stats.clamped;
            }
        }
    }

    auto record = [&](double t) {
        if (first == 1)
            v[0] = std::max(0.0, (4.0 * v[1] - v[2]) / 3.0);
        Density d(v0.grid_ptr(), v);
        const double drift = std::abs(d.mass() - mass0);
        traj.stats.max_mass_drift = std::max(traj.stats.max_mass_drift, drift);
        if (drift > 1e-6)
            throw Error(ErrorCode::SolverAbort,
                        "solver abort: mass drift " + std::to_string(drift) + " at t = " + std::to_string(t));
        const double e = d.energy();
        traj.snapshots.push_back({t, std::move(d), e});
    };

    double t = 0.0;
    std::size_t next = 0;
    if (times[0] == 0.0) {
        record(0.0);
        next = 1;
    }
    while (next < times.size()) {
        double diffusivity = 0.0;
        for (std::size_t i = first; i < m; ++i) {
            if (p == 1.0) {
                w[i] = v[i];
            } else {
                w[i] = std::pow(v[i], p);
                if (v[i] > 0.0)
                    diffusivity = std::max(diffusivity, p * w[i] / v[i]);
            }
        }
        if (p == 1.0)
            diffusivity = 1.0;
        if (!(diffusivity > 0.0) || !std::isfinite(diffusivity))
            throw Error(ErrorCode::SolverAbort, "solver abort: degenerate diffusivity");

        double dt = config.cfl * h * h / (2.0 * n * diffusivity);
        bool hit = false;
        if (t + dt >= times[next]) {
            dt = times[next] - t;
            hit = true;
        }

        for (std::size_t i = first; i + 1 < m; ++i)
            flux[i] = area[i] * (w[i + 1] - w[i]) / h;
        for (std::size_t i = first; i < m; ++i) {
            const double in = i > first ? flux[i - 1] : 0.0;
            const double out = i + 1 < m ? flux[i] : 0.0;
            v[i] += dt / weight[i] * (out - in);
        }
        for (std::size_t i = first; i < m; ++i) {
            if (!std::isfinite(v[i]))
                throw Error(ErrorCode::SolverAbort, "solver abort: non-finite value");
            if (v[i] < floor) {
                const double added = floor - v[i];
                // Negative round-off dust in the porous-medium case is not a floor event.
                if (p < 1.0 || added > 1e-14 * v0.max_value()) {
                    traj.stats.floor_mass += weight[i] * added;
                    traj.stats.floor_energy += weight[i] * grid.radius(i) * grid.radius(i) * added;
                    ++traj.stats.clamped;
                }
                v[i] = floor;
            }
        }
        ++traj.stats.steps;
        t = hit ? times[next] : t + dt;
        if (hit) {
            record(t);
            ++next;
        } else if (traj.stats.steps % 256 == 0) {
            double mass = 0.0;
            for (std::size_t i = first; i < m; ++i)
                mass += weight[i] * v[i];
            if (std::abs(mass - mass0) > 1e-6)
                throw Error(ErrorCode::SolverAbort, "solver abort: mass drift at t = " + std::to_string(t));
        }
    }
    return traj;
}

EnergyRateReport energy_rate_check(const Trajectory& traj)
{
    const auto& s = traj.snapshots;
    if (s.size() < 3)
        throw Error(ErrorCode::TooFewSnapshots, "too few snapshots: energy rate check needs at least 3");
    EnergyRateReport rep;
    const double n = traj.config.n;
    const double p = traj.config.p;
    for (std::size_t k = 1; k + 1 < s.size(); ++k) {
        const double h1 = s[k].t - s[k - 1].t;
        const double h2 = s[k + 1].t - s[k].t;
        const double rate = -h2 / (h1 * (h1 + h2)) * s[k - 1].energy + (h2 - h1) / (h1 * h2) * s[k].energy +
                            h1 / (h2 * (h1 + h2)) * s[k + 1].energy;
        const double predicted = 2.0 * n * lp_integral(s[k].density, p);
        rep.times.push_back(s[k].t);
        rep.measured.push_back(rate);
        rep.predicted.push_back(predicted);
        rep.max_relative_mismatch = std::max(rep.max_relative_mismatch, std::abs(rate - predicted) / predicted);
    }
    return rep;
}

Density gaussian_mixture(const GridPtr& grid, const std::vector<GaussianParams>& components)
{
    if (components.empty())
        throw Error(ErrorCode::InvalidArgument, "mixture needs at least one component");
    std::vector<double> values(grid->size(), 0.0);
    const auto x = grid->nodes();
    for (const auto& c : components) {
        if (c.n != grid->dim() || !(c.variance > 0.0) || !(c.weight >= 0.0))
            throw Error(ErrorCode::InvalidArgument, "invalid Gaussian component");
        if (grid->radial() && c.mean != 0.0)
            throw Error(ErrorCode::InvalidArgument, "radial Gaussian components must be centred");
        const double norm = c.weight * std::pow(2.0 * std::numbers::pi * c.variance, -0.5 * c.n);
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double d = x[i] - c.mean;
            values[i] += norm * std::exp(-d * d / (2.0 * c.variance));
        }
    }
    return Density(grid, std::move(values));
}

Trajectory exact_heat_mixture(const GridPtr& grid, const std::vector<GaussianParams>& components,
                              const std::vector<double>& times)
{
    if (times.empty())
        throw Error(ErrorCode::InvalidArgument, "no snapshot times");
    Trajectory traj;
    traj.config.p = 1.0;
    traj.config.n = grid->dim();
    traj.config.t_end = times.back();
    traj.config.snapshot_times = times;
    traj.provenance = Provenance::ExactGaussian;
    for (double t : times) {
        if (!(t >= 0.0))
            throw Error(ErrorCode::InvalidArgument, "snapshot times must be nonnegative");
        auto spread = components;
        for (auto& c : spread) {
            c.variance += 2.0 * t;
            const double reach = (grid->extent() - std::abs(c.mean)) / std::sqrt(2.0 * c.variance);
            if (std::erfc(reach) > 1e-8)
                throw Error(ErrorCode::SupportOverflow, "support overflow: heat kernel spreads past the grid");
        }
        Density d = gaussian_mixture(grid, spread);
        const double e = d.energy();
        traj.snapshots.push_back({t, std::move(d), e});
    }
    return traj;
}

Trajectory exact_heat(const GridPtr& grid, const GaussianParams& v0, const std::vector<double>& times)
{
    GaussianParams c = v0;
    c.weight = 1.0;
    return exact_heat_mixture(grid, {c}, times);
}

double barenblatt_clock(const SteadyProfile& profile, double t)
{
    return 1.0 + t * profile.lambda / profile.sigma;
}

Trajectory exact_barenblatt(const SteadyProfile& profile, const GridPtr& grid, const std::vector<double>& times)
{
    if (times.empty())
        throw Error(ErrorCode::InvalidArgument, "no snapshot times");
    Trajectory traj;
    traj.config.p = profile.p;
    traj.config.n = profile.n;
    traj.config.t_end = times.back();
    traj.config.snapshot_times = times;
    traj.provenance =
        profile.kind == ProfileKind::Gaussian ? Provenance::ExactGaussian : Provenance::ExactBarenblatt;
    for (double t : times) {
        if (!(t >= 0.0))
            throw Error(ErrorCode::InvalidArgument, "snapshot times must be nonnegative");
        Density d = selfsimilar_barenblatt(profile, barenblatt_clock(profile, t), grid);
        const double e = d.energy();
        traj.snapshots.push_back({t, std::move(d), e});
    }
    return traj;
}

}  // namespace renyi
