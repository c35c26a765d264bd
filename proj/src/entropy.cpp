#include "renyi/entropy.hpp"

#include "renyi/csv.hpp"
#include "renyi/error.hpp"

#include <cmath>
#include <limits>

namespace renyi {

namespace {

void require_positive_exponent(double p)
{
    if (!(p > 0.0) || !std::isfinite(p))
        throw Error(ErrorCode::InvalidArgument, "entropy exponent must be positive");
}

void require_same_grid(const Density& f, const Density& g)
{
    if (!(f.grid() == g.grid()))
        throw Error(ErrorCode::InvalidArgument, "densities live on different grids");
}

void require_normalized(const Density& f)
{
    if (std::abs(f.mass() - 1.0) > 1e-6)
        throw Error(ErrorCode::InvalidArgument,
                    "relative entropy needs a probability density (mass " + std::to_string(f.mass()) + ")");
}

// Gradient used by the Fisher functionals.  On a radial grid the slope at
// r = 0 vanishes by symmetry.
std::vector<double> support_gradient(const Grid& grid, const std::vector<double>& g)
{
    auto grad = grid.gradient(g);
    if (grid.radial())
        grad.front() = 0.0;
    return grad;
}

// Whether every node used by the difference stencil at i lies in the support.
bool stencil_in_support(const Density& f, std::size_t i)
{
    const std::size_t m = f.size();
    if (!f.in_support(i))
        return false;
    const bool radial = f.grid().radial();
    if (i == 0)
        return radial ? f.in_support(1) : (f.in_support(1) && f.in_support(2));
    if (i == m - 1)
        return f.in_support(m - 2) && f.in_support(m - 3);
    return f.in_support(i - 1) && f.in_support(i + 1);
}

// |grad f^p|^2 / f is evaluated as f |grad q|^2 with the pressure
// q = p/(p-1) f^{p-1} (log f at p = 1).  The pressure of a Barenblatt or
// Gaussian profile is quadratic, so central differences of q are exact on them.
FisherEstimate fisher_of_power(const Density& f, double p)
{
    const std::size_t m = f.size();
    const bool log_form = p == 1.0;
    std::vector<double> q(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (f.in_support(i))
            q[i] = log_form ? std::log(f[i]) : p / (p - 1.0) * std::pow(f[i], p - 1.0);
    const auto grad = support_gradient(f.grid(), q);
    const auto w = f.grid().weights();

    FisherEstimate est;
    for (std::size_t i = 0; i < m; ++i) {
        if (!f.in_support(i))
            continue;
        if (!stencil_in_support(f, i)) {
            ++est.dropped_nodes;
            est.dropped_mass += w[i] * f[i];
            continue;
        }
        est.value += w[i] * f[i] * grad[i] * grad[i];
    }
    est.value += tail_integral(f, [p](double, double v, double d) {
        const double dp = p == 1.0 ? d : p * std::pow(v, p - 1.0) * d;
        return dp * dp / v;
    });
    return est;
}

}  // namespace

double shannon(const Density& f)
{
    const auto w = f.grid().weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.in_support(i))
            sum -= w[i] * f[i] * std::log(f[i]);
    sum += tail_integral(f, [](double, double v, double) { return -v * std::log(v); });
    return sum;
}

double renyi(const Density& f, double p)
{
    require_positive_exponent(p);
    if (is_shannon(p))
        return shannon(f);
    return std::log(lp_integral(f, p)) / (1.0 - p);
}

double fisher(const Density& f)
{
    return fisher_of_power(f, 1.0).value;
}

FisherEstimate fisher_p_estimate(const Density& f, double p)
{
    require_admissible(p, f.grid().dim());
    if (is_shannon(p))
        return fisher_of_power(f, 1.0);
    FisherEstimate est = fisher_of_power(f, p);
    est.value /= lp_integral(f, p);
    return est;
}

double fisher_p(const Density& f, double p)
{
    return fisher_p_estimate(f, p).value;
}

double relative_renyi_hat(const Density& f, const Density& matched, double p)
{
    require_same_grid(f, matched);
    return renyi(matched, p) - renyi(f, p);
}

double relative_renyi_hat(const Density& f, double p)
{
    require_admissible(p, f.grid().dim());
    require_normalized(f);
    const auto matched = matched_profile(p, f.grid().dim(), f.energy(), f.grid_ptr());
    return relative_renyi_hat(f, matched.density, p);
}

double relative_renyi(const Density& f, const Density& g, double p)
{
    require_same_grid(f, g);
    require_positive_exponent(p);
    if (is_shannon(p))
        throw Error(ErrorCode::InvalidArgument, "H_p(f|g) is defined for p != 1; use relative_shannon");

    const auto w = f.grid().weights();
    double cross = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f.in_support(i))
            continue;
        if (g[i] <= 0.0 || (p > 1.0 && !g.in_support(i)))
            throw Error(ErrorCode::RelativeEntropyUndefined,
                        "relative entropy undefined: support of f is not contained in support of g");
        cross += w[i] * std::pow(g[i], p - 1.0) * f[i];
    }
    if (f.tail()) {
        if (!g.tail())
            throw Error(ErrorCode::RelativeEntropyUndefined,
                        "relative entropy undefined: f has a tail beyond the grid and g does not");
        cross += joint_tail_integral(f, g, [p](double, double fv, double gv) { return std::pow(gv, p - 1.0) * fv; });
    }
    if (!(cross > 0.0))
        throw Error(ErrorCode::RelativeEntropyUndefined, "relative entropy undefined: int g^{p-1} f vanishes");

    return std::log(lp_integral(f, p)) / (p - 1.0) + std::log(lp_integral(g, p)) -
           p / (p - 1.0) * std::log(cross);
}

double relative_shannon(const Density& f, const Density& g)
{
    require_same_grid(f, g);
    const auto w = f.grid().weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f.in_support(i))
            continue;
        if (!(g[i] > 0.0))
            throw Error(ErrorCode::RelativeEntropyUndefined, "relative entropy undefined: g vanishes where f > 0");
        sum += w[i] * f[i] * std::log(f[i] / g[i]);
    }
    if (f.tail()) {
        if (!g.tail())
            throw Error(ErrorCode::RelativeEntropyUndefined, "relative entropy undefined: g has no tail");
        sum += joint_tail_integral(f, g, [](double, double fv, double gv) { return fv * std::log(fv / gv); });
    }
    return sum;
}

double ralston(const Density& f, const Density& b, double p)
{
    require_same_grid(f, b);
    require_positive_exponent(p);
    if (is_shannon(p))
        return relative_shannon(f, b);

    if (p < 1.0) {
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i] > 0.0 && !(b[i] > 0.0))
                throw Error(ErrorCode::RelativeEntropyUndefined,
                            "relative entropy undefined: B must be positive where f > 0");
        if (f.tail() && !b.tail())
            throw Error(ErrorCode::RelativeEntropyUndefined, "relative entropy undefined: B has no tail");
    }

    auto gap = [p](double fv, double bv) {
        const double fp = fv > 0.0 ? std::pow(fv, p) : 0.0;
        if (bv <= 0.0)
            return fp;
        const double bp1 = std::pow(bv, p - 1.0);
        return fp - bp1 * bv - p * bp1 * (fv - bv);
    };
    const auto w = f.grid().weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        sum += w[i] * gap(f[i], b[i]);
    if (f.tail() && b.tail())
        sum += joint_tail_integral(f, b, [&](double, double fv, double bv) { return gap(fv, bv); });
    else if (b.tail())
        sum += tail_integral(b, [&](double, double bv, double) { return gap(0.0, bv); });
    else if (f.tail())
        sum += tail_integral(f, [&](double, double fv, double) { return gap(fv, 0.0); });
    return sum / (p - 1.0);
}

EntropyPowers entropy_powers(const Density& f, double p)
{
    require_admissible(p, f.grid().dim());
    const double n = f.grid().dim();
    EntropyPowers out;
    const double r1 = shannon(f);
    out.shannon_power = std::exp(2.0 / n * r1);
    out.renyi_power = is_shannon(p) ? out.shannon_power : std::exp((2.0 / n + p - 1.0) * renyi(f, p));
    return out;
}

double lambda_p(const Density& f, double p)
{
    if (!(f.energy() > 0.0))
        throw Error(ErrorCode::ZeroEnergy, "zero energy: Lambda_p undefined");
    return renyi(f, p) - 0.5 * f.grid().dim() * std::log(f.energy());
}

double l1_distance(const Density& f, const Density& g)
{
    require_same_grid(f, g);
    const auto w = f.grid().weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        sum += w[i] * std::abs(f[i] - g[i]);
    if (f.tail() && g.tail())
        sum += joint_tail_integral(f, g, [](double, double a, double b) { return std::abs(a - b); });
    else if (f.tail())
        sum += tail_integral(f, [](double, double v, double) { return v; });
    else if (g.tail())
        sum += tail_integral(g, [](double, double v, double) { return v; });
    return sum;
}

std::string EntropyReport::csv_header()
{
    return "p,R_p,shannon,I,I_p,H_hat_p,H_p_rel,F_p,N,N_p,Lambda_p";
}

std::string EntropyReport::to_csv_row() const
{
    using csv::number;
    return csv::join({number(p), number(renyi_p), number(shannon), number(fisher), number(fisher_p),
                      number(relative_renyi_hat), number(relative_renyi), number(ralston), number(shannon_power),
                      number(renyi_power), number(lambda_p)});
}

EntropyReport entropy_report(const Density& f, double p, const Density* reference)
{
    require_admissible(p, f.grid().dim());
    require_normalized(f);
    const auto matched = matched_profile(p, f.grid().dim(), f.energy(), f.grid_ptr());

    EntropyReport r;
    r.p = p;
    r.renyi_p = renyi(f, p);
    r.shannon = shannon(f);
    r.fisher = fisher(f);
    r.fisher_p = fisher_p(f, p);
    r.relative_renyi_hat = renyi(matched.density, p) - r.renyi_p;
    if (reference && !is_shannon(p)) {
        try {
            r.relative_renyi = relative_renyi(f, *reference, p);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::RelativeEntropyUndefined)
                throw;
        }
    }
    r.ralston = ralston(f, matched.density, p);
    const auto powers = entropy_powers(f, p);
    r.shannon_power = powers.shannon_power;
    r.renyi_power = powers.renyi_power;
    r.lambda_p = lambda_p(f, p);
    return r;
}

}  // namespace renyi
