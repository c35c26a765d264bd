#include "renyi/bounds.hpp"

#include "renyi/csv.hpp"
#include "renyi/entropy.hpp"
#include "renyi/error.hpp"
#include "renyi/profiles.hpp"
#include "renyi/rescale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace renyi {

namespace {

void require_bound_inputs(double H0, double E0, int n)
{
    if (!(H0 >= 0.0) || !std::isfinite(H0))
        throw Error(ErrorCode::InvalidArgument, "initial entropy must be finite and nonnegative");
    if (!(E0 > 0.0))
        throw Error(ErrorCode::InvalidArgument, "E0 must be positive");
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
}

// -(n/2) log[1 - (1 - exp(-2 H0 / n)) q] for q in (0, 1].
double saturating_bound(double H0, int n, double q)
{
    const double gap = -std::expm1(-2.0 * H0 / n);
    return -0.5 * n * std::log1p(-gap * q);
}

}  // namespace

double linear_bound(double H0, double E0, int n, double t)
{
    require_bound_inputs(H0, E0, n);
    if (!(t >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "time must be nonnegative");
    return saturating_bound(H0, n, E0 / (E0 + 2.0 * n * t));
}

double nonlinear_bound(double H0, double E0, int n, double E_t)
{
    require_bound_inputs(H0, E0, n);
    if (E_t < E0) {
        if (E_t < E0 * (1.0 - 1e-12))
            throw Error(ErrorCode::InvalidArgument, "second moment below its initial value");
        E_t = E0;
    }
    return saturating_bound(H0, n, E0 / E_t);
}

double tau_bound(double H0, double E0, int n, double tau)
{
    require_bound_inputs(H0, E0, n);
    if (!(tau >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "tau must be nonnegative");
    return saturating_bound(H0, n, std::exp(-2.0 * n * tau / E0));
}

double exponential_rate(double H0, double E0, int n, double tau)
{
    require_bound_inputs(H0, E0, n);
    return H0 * std::exp(-2.0 * n * tau / E0);
}

const char* to_string(Theorem theorem)
{
    return theorem == Theorem::LinearShannon ? "linear-shannon" : "nonlinear-renyi";
}

double DecayCurve::min_slack() const
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : entries)
        m = std::min(m, e.slack);
    return m;
}

double DecayCurve::max_increase() const
{
    double m = 0.0;
    for (std::size_t k = 1; k < entries.size(); ++k)
        m = std::max(m, entries[k].measured - entries[k - 1].measured);
    return m;
}

std::string DecayCurve::csv_header()
{
    return "t,tau,E,H_measured,H_bound,slack";
}

std::vector<std::string> DecayCurve::csv_rows() const
{
    using csv::number;
    std::vector<std::string> rows;
    for (const auto& e : entries)
        rows.push_back(csv::join({number(e.t), number(e.tau), number(e.energy), number(e.measured), number(e.bound),
                                  number(e.slack)}));
    return rows;
}

DecayCurve verify_decay(const Trajectory& traj, double p)
{
    if (traj.snapshots.empty())
        throw Error(ErrorCode::TooFewSnapshots, "too few snapshots: empty trajectory");
    const int n = traj.config.n;
    require_admissible(p, n);

    DecayCurve curve;
    curve.theorem = is_shannon(p) ? Theorem::LinearShannon : Theorem::NonlinearRenyi;
    curve.p = p;
    curve.n = n;
    curve.E0 = traj.snapshots.front().energy;

    for (const auto& s : traj.snapshots) {
        DecayEntry e;
        e.t = s.t;
        e.energy = s.energy;
        e.tau = tau_of_energy(std::max(s.energy, curve.E0), curve.E0, n);
        if (curve.theorem == Theorem::LinearShannon) {
            const auto gauss = gaussian_matched(n, s.energy, s.density.grid_ptr());
            e.measured = relative_shannon(s.density, gauss.density);
        } else {
            e.measured = relative_renyi_hat(s.density, p);
        }
        curve.entries.push_back(e);
    }
    curve.H0 = std::max(curve.entries.front().measured, 0.0);
    for (auto& e : curve.entries) {
        e.bound = curve.theorem == Theorem::LinearShannon ? linear_bound(curve.H0, curve.E0, n, e.t)
                                                          : nonlinear_bound(curve.H0, curve.E0, n, e.energy);
        e.slack = e.bound - e.measured;
    }
    return curve;
}

DecayRateReport decay_rate_check(const DecayCurve& curve)
{
    const auto& e = curve.entries;
    if (e.size() < 3)
        throw Error(ErrorCode::TooFewSnapshots, "too few snapshots: decay rate check needs at least 3");
    DecayRateReport rep;
    rep.max_excess = -std::numeric_limits<double>::infinity();
    const double n = curve.n;
    for (std::size_t k = 1; k + 1 < e.size(); ++k) {
        const double h1 = e[k].tau - e[k - 1].tau;
        const double h2 = e[k + 1].tau - e[k].tau;
        if (!(h1 > 0.0) || !(h2 > 0.0))
            throw Error(ErrorCode::InvalidArgument, "tau must be strictly increasing for the decay rate check");
        const double d = -h2 / (h1 * (h1 + h2)) * e[k - 1].measured + (h2 - h1) / (h1 * h2) * e[k].measured +
                         h1 / (h2 * (h1 + h2)) * e[k + 1].measured;
        const double limit = -(n * n / curve.E0) * std::expm1(2.0 * e[k].measured / n);
        rep.taus.push_back(e[k].tau);
        rep.derivative.push_back(d);
        rep.limit.push_back(limit);
        rep.max_excess = std::max(rep.max_excess, d - limit);
    }
    return rep;
}

std::string RateTable::csv_header()
{
    return "tau,r1,r2,gap";
}

std::vector<std::string> RateTable::csv_rows() const
{
    using csv::number;
    std::vector<std::string> out;
    for (const auto& r : rows)
        out.push_back(csv::join({number(r.tau), number(r.improved), number(r.exponential),
                                 number(r.exponential - r.improved)}));
    return out;
}

std::vector<double> default_tau_grid(double E0, int n, std::size_t count)
{
    if (count < 2)
        throw Error(ErrorCode::InvalidArgument, "tau grid needs at least 2 points");
    const double top = 10.0 * E0 / (2.0 * n);
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k)
        out[k] = top * static_cast<double>(k) / static_cast<double>(count - 1);
    return out;
}

RateTable compare_rates(double H0, double E0, int n, std::span<const double> taus)
{
    require_bound_inputs(H0, E0, n);
    if (!(H0 > 0.0))
        throw Error(ErrorCode::InvalidArgument, "rate comparison needs H0 > 0");
    RateTable table;
    table.H0 = H0;
    table.E0 = E0;
    table.n = n;
    for (double tau : taus) {
        RateRow row{tau, tau_bound(H0, E0, n, tau), exponential_rate(H0, E0, n, tau)};
        const double gap = row.exponential - row.improved;
        if (tau == 0.0) {
            table.saturated = table.saturated && std::abs(gap) <= 1e-10;
        } else if (!(row.improved < row.exponential)) {
            table.ordered = false;
        }
        if (gap > table.max_gap) {
            table.max_gap = gap;
            table.tau_at_max_gap = tau;
        }
        table.rows.push_back(row);
    }
    return table;
}

ConcavityReport concavity_check(const Trajectory& traj, double p)
{
    const auto& s = traj.snapshots;
    if (s.size() < 4)
        throw Error(ErrorCode::TooFewSnapshots, "too few snapshots: concavity check needs at least 4");
    const double step = s[1].t - s[0].t;
    for (std::size_t k = 1; k < s.size(); ++k)
        if (std::abs((s[k].t - s[k - 1].t) - step) > 1e-9 * step)
            throw Error(ErrorCode::NonuniformSpacing, "nonuniform spacing: concavity check needs uniform snapshots");

    ConcavityReport rep;
    rep.p = p;
    rep.max_relative = -std::numeric_limits<double>::infinity();
    for (const auto& snap : s) {
        rep.times.push_back(snap.t);
        rep.powers.push_back(entropy_powers(snap.density, p).renyi_power);
    }
    for (std::size_t k = 1; k + 1 < s.size(); ++k) {
        const auto& N = rep.powers;
        const double rel = (N[k + 1] - 2.0 * N[k] + N[k - 1]) / N[k];
        rep.relative_second_differences.push_back(rel);
        rep.max_relative = std::max(rep.max_relative, rel);
        rep.max_abs_relative = std::max(rep.max_abs_relative, std::abs(rel));
    }
    return rep;
}

const InequalityRow& InequalityReport::row(const std::string& name) const
{
    for (const auto& r : rows)
        if (r.name == name)
            return r;
    throw Error(ErrorCode::InvalidArgument, "no inequality named " + name);
}

double InequalityReport::min_slack() const
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : rows)
        if (r.applicable && r.asserted)
            m = std::min(m, r.slack);
    return m;
}

std::string InequalityReport::csv_header()
{
    return "p,name,lhs,rhs,slack,applicable,asserted,equality";
}

std::vector<std::string> InequalityReport::csv_rows() const
{
    using csv::number;
    std::vector<std::string> out;
    for (const auto& r : rows)
        out.push_back(csv::join({number(p), csv::field(r.name), number(r.lhs), number(r.rhs), number(r.slack),
                                 r.applicable ? "1" : "0", r.asserted ? "1" : "0", r.equality ? "1" : "0"}));
    return out;
}

InequalityReport inequality_suite(const Density& f, double p)
{
    const int n = f.grid().dim();
    require_admissible(p, n);
    const double energy = f.energy();
    if (std::abs(f.mass() - 1.0) > 1e-6 || std::abs(f.mean()) > 1e-6 * std::sqrt(energy))
        throw Error(ErrorCode::InvalidArgument, "inequality suite needs a normalized density");

    const bool shannon_case = is_shannon(p);
    const auto matched = matched_profile(p, n, energy, f.grid_ptr());
    const Density& b = matched.density;

    const double r_f = renyi(f, p);
    const double r_b = renyi(b, p);
    const double h_hat = r_b - r_f;
    const double i_f = fisher_p(f, p);
    // Closed form n / sigma for the steady profile, so equality cases test the discretization.
    const double i_b = n / matched.profile.sigma;
    const double lp_f = lp_integral(f, p);
    const double lp_b = lp_integral(b, p);

    InequalityReport rep;
    rep.p = p;
    auto add = [&](std::string name, double lhs, double rhs) {
        InequalityRow r;
        r.name = std::move(name);
        r.lhs = lhs;
        r.rhs = rhs;
        r.slack = lhs - rhs;
        rep.rows.push_back(r);
        return &rep.rows.back();
    };

    add("nonnegativity", r_b, r_f);
    add("mckean", i_f * energy / (n * n * lp_f), 1.0);
    add("renyi-iso", i_f / i_b, std::exp(-(2.0 / n + p - 1.0) * (r_f - r_b)));

    if (shannon_case) {
        const double x = 2.0 / n * (r_b - r_f);
        add("log-sobolev", i_f / i_b - 1.0, x);
        add("isoperimetric", i_f / i_b, std::exp(x));
        auto* ck = add("ck-upper", 0.0, 0.0);
        ck->applicable = false;
        add("relative-order", h_hat, relative_shannon(f, b))->equality = true;
    } else {
        const double f_p = ralston(f, b, p);
        add("ck-upper", (p < 1.0 ? lp_b : lp_f) * h_hat, f_p);
        try {
            add("relative-order", h_hat, relative_renyi(f, b, p))->equality = p < 1.0;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::RelativeEntropyUndefined)
                throw;
            add("relative-order", h_hat, 0.0)->applicable = false;
        }
    }

    const double dist = l1_distance(f, b);
    // For p <= 2 the second derivative p s^{p-2} of s^p/(p-1) is at least
    // p max(f,B)^{p-2} between f and B; Cauchy-Schwarz then bounds F_p below
    // by (p/2) |f - B|_1^2 / int max(f,B)^{2-p}.
    auto* ck_lower = add("ck-lower", 0.0, 0.0);
    if (p <= 2.0) {
        const double q = 2.0 - p;
        const auto w = f.grid().weights();
        double spread = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double m = std::max(f[i], b[i]);
            if (m > 0.0)
                spread += w[i] * std::pow(m, q);
        }
        auto power = [q](double, double v, double) { return v > 0.0 ? std::pow(v, q) : 0.0; };
        if (f.tail() && b.tail())
            spread += joint_tail_integral(f, b, [q](double, double u, double v) { return std::pow(std::max(u, v), q); });
        else if (f.tail())
            spread += tail_integral(f, power);
        else if (b.tail())
            spread += tail_integral(b, power);
        ck_lower->lhs = shannon_case ? relative_shannon(f, b) : ralston(f, b, p);
        ck_lower->rhs = 0.5 * p * dist * dist / spread;
        ck_lower->slack = ck_lower->lhs - ck_lower->rhs;
    } else {
        ck_lower->applicable = false;
    }

    const bool separated = dist > 1e-6;
    auto* ck_const = add("ck-constant", separated ? h_hat / (dist * dist) : 0.0, 0.0);
    ck_const->asserted = false;
    ck_const->applicable = separated;
    return rep;
}

}  // namespace renyi
