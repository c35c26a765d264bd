#include "renyi/rescale.hpp"

#include "renyi/error.hpp"

#include <algorithm>
#include <cmath>

namespace renyi {

double tau_of_energy(double energy, double initial_energy, int n)
{
    if (!(energy > 0.0) || !(initial_energy > 0.0))
        throw Error(ErrorCode::ZeroEnergy, "nonpositive energy: time change undefined");
    return initial_energy / (2.0 * n) * std::log(energy / initial_energy);
}

std::vector<double> tau_of_t(const Trajectory& traj)
{
    if (traj.snapshots.empty())
        throw Error(ErrorCode::TooFewSnapshots, "too few snapshots: empty trajectory");
    const double e0 = traj.snapshots.front().energy;
    std::vector<double> out;
    out.reserve(traj.snapshots.size());
    for (const auto& s : traj.snapshots)
        out.push_back(tau_of_energy(s.energy, e0, traj.config.n));
    out.front() = 0.0;
    return out;
}

ScaledTrajectory to_scaled(const Trajectory& traj)
{
    const auto taus = tau_of_t(traj);
    ScaledTrajectory out;
    out.config = traj.config;
    out.provenance = traj.provenance;
    out.E0 = traj.snapshots.front().energy;
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        const auto& s = traj.snapshots[k];
        const double a = std::sqrt(s.energy / out.E0);
        if (a < 1.0 - 1e-12)
            throw Error(ErrorCode::InvalidArgument, "energy fell below its initial value");
        // normalize() dilates by a, then refines the factor so interpolation
        // error does not leak into the frozen moments.
        out.entries.push_back({s.t, taus[k], a, normalize(s.density, out.E0)});
    }
    return out;
}

std::vector<double> scaled_rhs(const Density& u, double p, double E0)
{
    const Grid& grid = u.grid();
    const std::size_t m = grid.size();
    const double h = grid.spacing();
    const auto x = grid.nodes();
    const auto weight = grid.weights();
    const auto area = face_areas(grid);
    const double n = grid.dim();
    const double norm = lp_integral(u, p);

    // For p != 1 the diffusive flux grad u^p is written as u grad q with the
    // pressure q = p/(p-1) u^{p-1}, which is quadratic on steady profiles.
    // Faces touching a node outside the support fall back to differences of u^p.
    std::vector<double> w(m);
    std::vector<double> q(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        w[i] = p == 1.0 ? u[i] : std::pow(u[i], p);
        if (p != 1.0 && u.in_support(i))
            q[i] = p / (p - 1.0) * w[i] / u[i];
    }
    std::vector<double> flux(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double mid = 0.5 * (x[i] + x[i + 1]);
        const double avg = 0.5 * (u[i] + u[i + 1]);
        const bool pressure = p != 1.0 && u.in_support(i) && u.in_support(i + 1);
        const double diffusive = pressure ? avg * (q[i + 1] - q[i]) / h : (w[i + 1] - w[i]) / h;
        flux[i] = area[i] * (diffusive / norm + n / E0 * mid * avg);
    }
    std::vector<double> rhs(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (weight[i] == 0.0)
            continue;
        const double in = i > 0 ? flux[i - 1] : 0.0;
        const double out = i + 1 < m ? flux[i] : 0.0;
        rhs[i] = (out - in) / weight[i];
    }
    return rhs;
}

StationarityReport stationarity_residual(const ScaledTrajectory& scaled, double p)
{
    const auto& e = scaled.entries;
    if (e.size() < 3)
        throw Error(ErrorCode::TooFewSnapshots, "too few snapshots: stationarity check needs at least 3 entries");
    const auto weight = e.front().u.grid().weights();

    StationarityReport rep;
    std::vector<std::vector<double>> rhs;
    for (const auto& entry : e) {
        rhs.push_back(scaled_rhs(entry.u, p, scaled.E0));
        double l1 = 0.0;
        for (std::size_t i = 0; i < weight.size(); ++i)
            l1 += weight[i] * std::abs(rhs.back()[i]);
        rep.taus.push_back(entry.tau);
        rep.rhs_l1.push_back(l1);
        rep.max_rhs_l1 = std::max(rep.max_rhs_l1, l1);
    }
    for (std::size_t k = 1; k + 1 < e.size(); ++k) {
        const double h1 = e[k].tau - e[k - 1].tau;
        const double h2 = e[k + 1].tau - e[k].tau;
        if (!(h1 > 0.0) || !(h2 > 0.0))
            throw Error(ErrorCode::InvalidArgument, "tau must be strictly increasing for the residual check");
        const double c0 = -h2 / (h1 * (h1 + h2));
        const double c1 = (h2 - h1) / (h1 * h2);
        const double c2 = h1 / (h2 * (h1 + h2));
        double l1 = 0.0;
        for (std::size_t i = 0; i < weight.size(); ++i) {
            const double dudt = c0 * e[k - 1].u[i] + c1 * e[k].u[i] + c2 * e[k + 1].u[i];
            l1 += weight[i] * std::abs(dudt - rhs[k][i]);
        }
        rep.residual_l1.push_back(l1);
        rep.max_residual_l1 = std::max(rep.max_residual_l1, l1);
    }
    return rep;
}

}  // namespace renyi
