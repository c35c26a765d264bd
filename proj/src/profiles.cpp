#include "renyi/profiles.hpp"

#include "renyi/error.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace renyi {

const char* to_string(ProfileKind kind)
{
    switch (kind) {
    case ProfileKind::Gaussian: return "Gaussian";
    case ProfileKind::BarenblattFD: return "BarenblattFD";
    case ProfileKind::BarenblattPME: return "BarenblattPME";
    }
    return "?";
}

double critical_exponent(int n)
{
    return static_cast<double>(n) / (n + 2.0);
}

bool admissible_exponent(double p, int n)
{
    return std::isfinite(p) && p > critical_exponent(n);
}

void require_admissible(double p, int n)
{
    if (!admissible_exponent(p, n))
        throw Error(ErrorCode::InadmissibleExponent,
                    "inadmissible exponent p = " + std::to_string(p) + " (need p > n/(n+2) = " +
                        std::to_string(critical_exponent(n)) + ")");
}

double SteadyProfile::value(double r) const
{
    switch (kind) {
    case ProfileKind::Gaussian:
        return c_b * std::exp(-r * r / (2.0 * sigma));
    case ProfileKind::BarenblattFD: {
        const double k = (1.0 - p) / (2.0 * p * sigma);
        return std::pow(c_b + k * r * r, 1.0 / (p - 1.0));
    }
    case ProfileKind::BarenblattPME: {
        const double k = (p - 1.0) / (2.0 * p * sigma);
        const double base = c_b - k * r * r;
        return base > 0.0 ? std::pow(base, 1.0 / (p - 1.0)) : 0.0;
    }
    }
    return 0.0;
}

double SteadyProfile::support_radius() const
{
    if (kind != ProfileKind::BarenblattPME)
        return std::numeric_limits<double>::infinity();
    return std::sqrt(2.0 * p * sigma * c_b / (p - 1.0));
}

std::optional<PowerTail> SteadyProfile::tail() const
{
    if (kind != ProfileKind::BarenblattFD)
        return std::nullopt;
    return PowerTail{1.0, c_b, (1.0 - p) / (2.0 * p * sigma), 1.0 / (1.0 - p)};
}

Density sample_profile(const SteadyProfile& profile, const GridPtr& grid)
{
    std::vector<double> values(grid->size());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = profile.value(grid->radius(i));
    return Density(grid, std::move(values), profile.tail());
}

namespace {

void require_energy(double e)
{
    if (!(e > 0.0) || !std::isfinite(e))
        throw Error(ErrorCode::InvalidArgument, "target energy must be positive");
}

SteadyProfile barenblatt_shape(double p, int n, double c_b, double sigma, double e0)
{
    SteadyProfile prof;
    prof.p = p;
    prof.n = n;
    prof.c_b = c_b;
    prof.sigma = sigma;
    prof.lambda = 2.0 - n * (1.0 - p);
    prof.kind = p < 1.0 ? ProfileKind::BarenblattFD : ProfileKind::BarenblattPME;
    prof.energy = e0;
    return prof;
}

struct Residual {
    std::array<double, 2> r{};
    bool valid = false;
};

}  // namespace

MatchedProfile gaussian_matched(int n, double target_energy, const GridPtr& grid)
{
    require_energy(target_energy);
    if (grid->dim() != n)
        throw Error(ErrorCode::InvalidArgument, "grid dimension does not match n");
    SteadyProfile prof;
    prof.p = 1.0;
    prof.n = n;
    prof.sigma = target_energy / n;
    prof.c_b = std::pow(2.0 * std::numbers::pi * prof.sigma, -0.5 * n);
    prof.lambda = 2.0;
    prof.kind = ProfileKind::Gaussian;
    prof.energy = target_energy;
    // Share of the Gaussian mass beyond the grid edge.
    const double outside = boost::math::gamma_q(0.5 * n, grid->extent() * grid->extent() / (2.0 * prof.sigma));
    if (outside > 1e-8)
        throw Error(ErrorCode::GridTooSmall, "grid too small: Gaussian mass beyond the extent exceeds 1e-8");
    MatchedProfile out{prof, sample_profile(prof, grid)};
    out.identity_residual = prof.sigma * out.density.mass() - target_energy / n;
    return out;
}

MatchedProfile barenblatt_matched(double p, int n, double target_energy, const GridPtr& grid,
                                  const MatchOptions& options)
{
    require_admissible(p, n);
    if (is_shannon(p))
        throw Error(ErrorCode::InadmissibleExponent, "inadmissible exponent: Barenblatt needs p != 1");
    require_energy(target_energy);
    if (grid->dim() != n)
        throw Error(ErrorCode::InvalidArgument, "grid dimension does not match n");

    const double log_e0 = std::log(target_energy);
    const double extent = grid->extent();

    // x = (log c_b, log sigma) -> (log mass, log energy - log E0)
    auto residual = [&](const std::array<double, 2>& x) {
        Residual res;
        const auto prof = barenblatt_shape(p, n, std::exp(x[0]), std::exp(x[1]), target_energy);
        if (prof.kind == ProfileKind::BarenblattPME && prof.support_radius() > extent)
            return res;
        const Density d = sample_profile(prof, grid);
        if (!(d.mass() > 0.0) || !(d.energy() > 0.0) || !std::isfinite(d.energy()))
            return res;
        res.r = {std::log(d.mass()), std::log(d.energy()) - log_e0};
        res.valid = true;
        return res;
    };
    auto norm = [](const Residual& r) { return std::hypot(r.r[0], r.r[1]); };

    std::array<double, 2> x{};
    if (options.initial_guess) {
        x = {std::log(options.initial_guess->first), std::log(options.initial_guess->second)};
    } else {
        // Gaussian limit: sigma = E0/n and c_b^{1/(p-1)} = (2 pi sigma)^{-n/2}; then
        // polish c_b by mass closure, using the exact exponent
        // d log(mass) / d log(c_b) = n/2 + 1/(p-1) of the closed form.
        const double sigma0 = target_energy / n;
        x = {-0.5 * n * (p - 1.0) * std::log(2.0 * std::numbers::pi * sigma0), std::log(sigma0)};
        const double slope = 0.5 * n + 1.0 / (p - 1.0);
        if (p > 1.0) {
            // Keep the starting support inside the grid.
            const double r_max = 0.5 * extent;
            const double c_max = r_max * r_max * (p - 1.0) / (2.0 * p * std::exp(x[1]));
            x[0] = std::min(x[0], std::log(c_max));
        }
        for (int it = 0; it < 8; ++it) {
            const auto r = residual(x);
            if (!r.valid)
                throw Error(ErrorCode::GridTooSmall, "grid too small to hold the Barenblatt profile");
            if (std::abs(r.r[0]) < 1e-3)
                break;
            x[0] -= r.r[0] / slope;
        }
    }

    Residual current = residual(x);
    if (!current.valid)
        throw Error(ErrorCode::GridTooSmall, "grid too small to hold the Barenblatt profile");

    int iterations = 0;
    const double step = 1e-6;
    while (norm(current) > options.tolerance) {
        if (++iterations > options.max_iterations)
            throw Error(ErrorCode::RootFinderFailed, "root finder failed: Barenblatt matching did not converge");
        std::array<std::array<double, 2>, 2> jac{};
        for (int j = 0; j < 2; ++j) {
            auto xp = x;
            auto xm = x;
            xp[j] += step;
            xm[j] -= step;
            const auto rp = residual(xp);
            const auto rm = residual(xm);
            if (!rp.valid || !rm.valid)
                throw Error(ErrorCode::GridTooSmall, "grid too small to hold the Barenblatt profile");
            for (int i = 0; i < 2; ++i)
                jac[i][j] = (rp.r[i] - rm.r[i]) / (2.0 * step);
        }
        const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if (!(std::abs(det) > 1e-14))
            throw Error(ErrorCode::RootFinderFailed, "root finder failed: singular Jacobian");
        const std::array<double, 2> dx = {
            -(jac[1][1] * current.r[0] - jac[0][1] * current.r[1]) / det,
            -(-jac[1][0] * current.r[0] + jac[0][0] * current.r[1]) / det,
        };
        double damping = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls) {
            const std::array<double, 2> trial = {x[0] + damping * dx[0], x[1] + damping * dx[1]};
            const auto r = residual(trial);
            if (r.valid && norm(r) < norm(current)) {
                x = trial;
                current = r;
                accepted = true;
                break;
            }
            damping *= 0.5;
        }
        if (!accepted)
            break;
    }
    if (norm(current) > 1e-10)
        throw Error(ErrorCode::RootFinderFailed, "root finder failed: residual stalled above 1e-10");

    MatchedProfile out{barenblatt_shape(p, n, std::exp(x[0]), std::exp(x[1]), target_energy),
                       Density(grid, std::vector<double>(grid->size(), 0.0))};
    out.density = sample_profile(out.profile, grid);
    out.iterations = iterations;
    out.identity_residual = out.profile.sigma * lp_integral(out.density, p) - target_energy / n;

    if (p > 1.0 && out.profile.support_radius() > extent - grid->spacing())
        throw Error(ErrorCode::GridTooSmall, "grid too small: Barenblatt support reaches the grid edge");
    if (auto tail = out.profile.tail()) {
        double err = 0.0;
        out.tail_mass = grid->integrate_beyond([&](double r) { return tail->value(r); }, &err);
        out.tail_error = err;
        // An analytic tail stands in for the far field, not for the profile's core.
        if (out.tail_mass > 1e-2 || out.tail_error > 1e-8)
            throw Error(ErrorCode::GridTooSmall,
                        "grid too small: tail beyond the grid carries " + std::to_string(out.tail_mass) +
                            " of the mass");
    }
    return out;
}

MatchedProfile matched_profile(double p, int n, double target_energy, const GridPtr& grid)
{
    if (is_shannon(p))
        return gaussian_matched(n, target_energy, grid);
    return barenblatt_matched(p, n, target_energy, grid);
}

Density selfsimilar_barenblatt(const SteadyProfile& profile, double t, const GridPtr& grid)
{
    if (!(t > 0.0) || !std::isfinite(t))
        throw Error(ErrorCode::InvalidArgument, "self-similar time must be positive");
    const double a = std::pow(t, -1.0 / profile.lambda);
    const double extent = grid->extent();
    if (profile.kind == ProfileKind::BarenblattPME && profile.support_radius() / a > extent)
        throw Error(ErrorCode::SupportOverflow, "support overflow: Barenblatt support leaves the grid");
    if (profile.kind == ProfileKind::Gaussian && 6.0 * std::sqrt(profile.sigma) / a > extent)
        throw Error(ErrorCode::SupportOverflow, "support overflow: Gaussian spreads past the grid");

    const double scale = std::pow(a, profile.n);
    std::vector<double> values(grid->size());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = scale * profile.value(a * grid->radius(i));
    if (auto base = profile.tail())
        return Density(grid, std::move(values), base->dilated(a, profile.n));
    // Without a tail the sample carries the whole mass; fix the quadrature error
    // of the kinked support edge so each slice has unit discrete mass.
    const double mass = integrate(*grid, values);
    for (double& v : values)
        v /= mass;
    return Density(grid, std::move(values));
}

PhiReport phi_monotonicity_check(double p, int n, const GridPtr& grid, std::span<const double> sigmas)
{
    if (is_shannon(p))
        throw Error(ErrorCode::InadmissibleExponent, "inadmissible exponent: phi_p is defined for p != 1");
    require_admissible(p, n);
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        if (!(sigmas[i] > 0.0) || (i > 0 && !(sigmas[i] > sigmas[i - 1])))
            throw Error(ErrorCode::InvalidArgument, "sigmas must be positive and increasing");
    }

    // Base steady state with unit energy; Bbar_sigma = sigma^{-1} * (dilation by 1/sqrt(sigma)).
    const SteadyProfile base = barenblatt_matched(p, n, 1.0, grid).profile;

    PhiReport report;
    report.p = p;
    report.expect_increasing = p < 1.0;
    report.sigmas.assign(sigmas.begin(), sigmas.end());
    for (double s : sigmas) {
        const double a = 1.0 / std::sqrt(s);
        if (base.kind == ProfileKind::BarenblattPME && base.support_radius() / a > grid->extent())
            throw Error(ErrorCode::SupportOverflow, "support overflow: dilated profile leaves the grid");
        std::vector<double> values(grid->size());
        for (std::size_t i = 0; i < values.size(); ++i)
            values[i] = std::pow(a, n + 2) * base.value(a * grid->radius(i));
        std::optional<PowerTail> tail;
        if (auto t = base.tail())
            tail = t->dilated(a, n).scaled(a * a);
        const Density bs(grid, std::move(values), tail);
        report.phi.push_back(s * lp_integral(bs, p));
    }
    report.monotone = true;
    for (std::size_t i = 1; i < report.phi.size(); ++i) {
        const bool up = report.phi[i] > report.phi[i - 1];
        const bool down = report.phi[i] < report.phi[i - 1];
        if (report.expect_increasing ? !up : !down)
            report.monotone = false;
    }
    return report;
}

}  // namespace renyi
