#include "renyi/bounds.hpp"
#include "renyi/density.hpp"
#include "renyi/error.hpp"
#include "renyi/evolve.hpp"
#include "renyi/families.hpp"
#include "renyi/profiles.hpp"
#include "renyi/rescale.hpp"

#include "support/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace renyi;

namespace {

// Independent transcription of the improved decay estimate.
double bound_oracle(double H0, double ratio, int n)
{
    return -0.5 * n * std::log(1.0 - (1.0 - std::exp(-2.0 * H0 / n)) * ratio);
}

}  // namespace

TEST_CASE("decay bounds agree with each other")
{
    oracle::Gen gen(101);
    for (int k = 0; k < 50; ++k) {
        const double H0 = gen.uniform(0.01, 5.0);
        const double E0 = gen.uniform(0.1, 10.0);
        const int n = gen.integer(1, 3);
        const double t = gen.uniform(0.0, 10.0);
        const double Et = E0 + 2.0 * n * t;
        const double tau = tau_of_energy(Et, E0, n);
        CHECK(linear_bound(H0, E0, n, t) == doctest::Approx(bound_oracle(H0, E0 / Et, n)).epsilon(1e-12));
        CHECK(std::abs(nonlinear_bound(H0, E0, n, Et) - linear_bound(H0, E0, n, t)) <= 1e-10);
        CHECK(std::abs(tau_bound(H0, E0, n, tau) - nonlinear_bound(H0, E0, n, Et)) <= 1e-10);
    }
}

TEST_CASE("decay bounds saturate at the start and decrease")
{
    for (double H0 : {0.01, 1.0, 5.0}) {
        CHECK(std::abs(linear_bound(H0, 1.0, 1, 0.0) - H0) <= 1e-10);
        CHECK(std::abs(tau_bound(H0, 2.0, 3, 0.0) - H0) <= 1e-10);
        double prev = H0;
        for (double t = 0.1; t < 10.0; t += 0.1) {
            const double b = linear_bound(H0, 1.0, 2, t);
            CHECK(b < prev);
            CHECK(b > 0.0);
            prev = b;
        }
    }
    ErrorCode code = ErrorCode::Io;
    try {
        nonlinear_bound(1.0, 2.0, 1, 1.5);
    } catch (const Error& e) {
        code = e.code();
    }
    CHECK(code == ErrorCode::InvalidArgument);
}

TEST_CASE("improved rate never exceeds the exponential one")
{
    oracle::Gen gen(2);
    for (int k = 0; k < 20; ++k) {
        const double H0 = gen.uniform(0.01, 5.0);
        const double E0 = gen.uniform(0.1, 10.0);
        const int n = gen.integer(1, 3);
        const auto taus = default_tau_grid(E0, n);
        REQUIRE(taus.size() == 100);
        const auto table = compare_rates(H0, E0, n, taus);
        CHECK(table.ordered);
        CHECK(table.saturated);
        CHECK(std::abs(table.rows.front().improved - table.rows.front().exponential) <= 1e-10);
        for (std::size_t i = 1; i < table.rows.size(); ++i)
            CHECK(table.rows[i].improved < table.rows[i].exponential);
        CHECK(table.max_gap > 0.0);
    }
}

TEST_CASE("small initial entropy makes the two rates coincide")
{
    const double tau = 0.7;
    const double r1 = tau_bound(1e-4, 1.0, 1, tau);
    const double r2 = exponential_rate(1e-4, 1.0, 1, tau);
    CHECK(std::abs(r1 / r2 - 1.0) <= 1e-3);
}

TEST_CASE("linear decay along the heat flow")
{
    const auto g = make_grid(GridKind::Line1D, 1, 30.0, 2001);
    const auto v0 = two_bump(g, 1.0);
    SolverConfig c;
    c.t_end = 5.0;
    c.snapshot_times = uniform_times(5.0, 20);
    const auto curve = verify_decay(solve(v0, c), 1.0);
    CHECK(curve.theorem == Theorem::LinearShannon);
    CHECK(curve.min_slack() >= -1e-3);
    CHECK(curve.max_increase() <= 1e-6);
    CHECK(std::abs(curve.entries.front().bound - curve.H0) <= 1e-10);
    for (std::size_t k = 1; k < curve.entries.size(); ++k)
        CHECK(curve.entries[k].bound <= curve.entries[k - 1].bound);

    const auto rate = decay_rate_check(curve);
    CHECK(rate.derivative.size() == curve.entries.size() - 2);
}

TEST_CASE("nonlinear decay along the porous medium flow")
{
    const auto g = make_grid(GridKind::Line1D, 1, 5.0, 1001);
    const auto v0 = perturbed_barenblatt(2.0, g, 1.0);
    SolverConfig c;
    c.p = 2.0;
    c.t_end = 2.0;
    c.snapshot_times = uniform_times(2.0, 20);
    const auto curve = verify_decay(solve(v0, c), 2.0);
    CHECK(curve.theorem == Theorem::NonlinearRenyi);
    CHECK(curve.min_slack() >= -1e-2);
    CHECK(curve.H0 > 0.0);
}

TEST_CASE("entropy power concavity")
{
    SUBCASE("exact Barenblatt: linear")
    {
        const auto g = make_grid(GridKind::Line1D, 1, 8.0, 2001);
        const auto m = barenblatt_matched(2.0, 1, 1.0, g);
        const auto rep = concavity_check(exact_barenblatt(m.profile, g, uniform_times(4.0, 8)), 2.0);
        CHECK(rep.linear(1e-3));
    }
    SUBCASE("numerical two-bump porous medium run: concave")
    {
        const auto g = make_grid(GridKind::Line1D, 1, 5.0, 1001);
        SolverConfig c;
        c.p = 2.0;
        c.t_end = 2.0;
        c.snapshot_times = uniform_times(2.0, 20);
        const auto rep = concavity_check(solve(two_bump(g, 1.0), c), 2.0);
        CHECK(rep.concave(1e-3));
    }
    SUBCASE("too few snapshots")
    {
        const auto g = make_grid(GridKind::Line1D, 1, 16.0, 1001);
        ErrorCode code = ErrorCode::Io;
        try {
            concavity_check(exact_heat(g, {1, 1.0, 0.0, 1.0}, {0.0, 0.5, 1.0}), 1.0);
        } catch (const Error& e) {
            code = e.code();
        }
        CHECK(code == ErrorCode::TooFewSnapshots);
    }
}

TEST_CASE("inequality suite on random mixtures")
{
    const auto g = make_grid(GridKind::Line1D, 1, 12.0, 2001);
    for (double p : {0.75, 1.0, 2.0}) {
        CAPTURE(p);
        std::mt19937_64 rng(static_cast<std::uint64_t>(1000 * p));
        for (int k = 0; k < 10; ++k) {
            const auto f = random_mixture(g, 1.0, rng);
            const auto rep = inequality_suite(f, p);
            for (const auto& row : rep.rows) {
                CAPTURE(row.name);
                if (row.applicable && row.asserted)
                    CHECK(row.slack >= -1e-6);
            }
        }
    }
}

TEST_CASE("inequality suite rows per exponent")
{
    const auto g = make_grid(GridKind::Line1D, 1, 12.0, 2001);
    std::mt19937_64 rng(8);
    const auto f = random_mixture(g, 1.0, rng);
    const auto shannon_rows = inequality_suite(f, 1.0);
    CHECK(shannon_rows.row("log-sobolev").applicable);
    CHECK(shannon_rows.row("isoperimetric").applicable);
    // The isoperimetric form implies the log-Sobolev one (exp(-x) >= 1 - x): its slack is smaller.
    CHECK(shannon_rows.row("isoperimetric").slack <= shannon_rows.row("log-sobolev").slack + 1e-12);
    CHECK(shannon_rows.row("isoperimetric").slack >= 0.0);

    const auto pme = inequality_suite(f, 2.0);
    CHECK_THROWS(pme.row("log-sobolev"));
    CHECK(pme.row("ck-lower").applicable);
    CHECK_FALSE(inequality_suite(f, 3.0).row("ck-lower").applicable);
    CHECK_FALSE(pme.row("ck-constant").asserted);
    CHECK(pme.min_slack() >= -1e-6);

    const auto header = InequalityReport::csv_header();
    for (const auto& row : pme.csv_rows())
        CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
}

TEST_CASE("inequality suite equality cases on matched profiles")
{
    SUBCASE("Gaussian")
    {
        const auto g = make_grid(GridKind::Line1D, 1, 12.0, 2001);
        const auto rep = inequality_suite(gaussian_matched(1, 1.0, g).density, 1.0);
        for (const auto& row : rep.rows)
            if (row.applicable && row.asserted) {
                CAPTURE(row.name);
                CHECK(std::abs(row.slack) <= 1e-4);
            }
    }
    SUBCASE("porous medium")
    {
        // Grid fitted to the support so the free boundary is resolved.
        const auto b = oracle::barenblatt(2.0, 1, 1.0);
        const auto g = make_grid(GridKind::Line1D, 1, 1.5 * b.radius, 2001);
        const auto rep = inequality_suite(barenblatt_matched(2.0, 1, 1.0, g).density, 2.0);
        CHECK(std::abs(rep.row("mckean").slack) <= 1e-4);
        CHECK(std::abs(rep.row("nonnegativity").slack) <= 1e-8);
        CHECK(std::abs(rep.row("renyi-iso").slack) <= 1e-4);
    }
}
