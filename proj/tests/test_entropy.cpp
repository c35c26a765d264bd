#include "renyi/density.hpp"
#include "renyi/entropy.hpp"
#include "renyi/families.hpp"
#include "renyi/profiles.hpp"

#include "support/oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace renyi;

namespace {

Density gaussian_on(const GridPtr& g, double var)
{
    std::vector<double> v;
    for (double x : g->nodes())
        v.push_back(oracle::gaussian(x, 0.0, var));
    return Density(g, std::move(v));
}

}  // namespace

TEST_CASE("Renyi entropy of a uniform density is the log of its length")
{
    // Box of second moment 1 is [-sqrt 3, sqrt 3]; every R_p equals log(2 sqrt 3).
    const auto g = make_grid(GridKind::Line1D, 1, 4.0, 4001);
    const auto f = uniform_box(g, 1.0);
    for (double p : {0.5, 1.0, 2.0, 3.0})
        CHECK(renyi::renyi(f, p) == doctest::Approx(std::log(2.0 * std::sqrt(3.0))).epsilon(1e-3));
}

TEST_CASE("Renyi entropy of Gaussians")
{
    const auto g = make_grid(GridKind::Line1D, 1, 12.0, 2001);
    const auto f = gaussian_on(g, 1.0);
    CHECK(std::abs(renyi::renyi(f, 1.0) - 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e)) <= 1e-6);
    CHECK(shannon(f) == doctest::Approx(oracle::gaussian_entropy(1, 1.0)).epsilon(1e-8));
    for (double p : {0.6, 0.75, 2.0, 3.0}) {
        const double expect = std::log(oracle::gaussian_power_integral(1, 1.0, p)) / (1.0 - p);
        CHECK(renyi::renyi(f, p) == doctest::Approx(expect).epsilon(1e-8));
    }
    // p = 2 integral of the standard Gaussian.
    CHECK(lp_integral(f, 2.0) == doctest::Approx(0.5 / std::sqrt(std::numbers::pi)).epsilon(1e-6));
}

TEST_CASE("Renyi entropy is continuous at p = 1")
{
    const auto g = make_grid(GridKind::Line1D, 1, 12.0, 2001);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 5; ++k) {
        const auto f = random_mixture(g, 1.0, rng);
        CHECK(std::abs(renyi::renyi(f, 0.999) - renyi::renyi(f, 1.0)) <= 1e-3);
        CHECK(std::abs(renyi::renyi(f, 1.001) - renyi::renyi(f, 1.0)) <= 1e-3);
        // Inside the Shannon window the branch is Shannon exactly.
        CHECK(renyi::renyi(f, 1.0 + 1e-7) == shannon(f));
    }
}

TEST_CASE("Fisher information of Gaussians")
{
    const auto g = make_grid(GridKind::Line1D, 1, 12.0, 2001);
    for (double var : {0.5, 1.0, 2.0}) {
        const auto f = gaussian_on(g, var);
        CHECK(fisher(f) == doctest::Approx(1.0 / var).epsilon(1e-3));
        CHECK(fisher_p(f, 1.0) == doctest::Approx(fisher(f)).epsilon(1e-8));
    }
    // I(f_a) = a^2 I(f); a = 0.5 needs room for variance 4.
    const auto f = gaussian_on(make_grid(GridKind::Line1D, 1, 16.0, 2001), 1.0);
    for (double a : {0.5, 2.0})
        CHECK(fisher(dilate(f, a)) == doctest::Approx(a * a * fisher(f)).epsilon(1e-3));

    const auto g3 = make_grid(GridKind::RadialND, 3, 8.0, 2001);
    CHECK(fisher(gaussian_matched(3, 3.0, g3).density) == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("Fisher information of a uniform density is small")
{
    const auto g = make_grid(GridKind::Line1D, 1, 2.0, 801);
    std::vector<double> v;
    for (double x : g->nodes())
        v.push_back(std::abs(x) <= 1.0 + 1e-12 ? 0.5 : 0.0);
    const Density f(g, std::move(v));
    const auto est = fisher_p_estimate(f, 1.0);
    // The stencils straddling the jumps are dropped; the rest is flat.
    CHECK(est.value <= 1e-2);
    CHECK(est.dropped_nodes >= 2);
    CHECK(est.dropped_mass <= 1e-2);
    CHECK(fisher(f) <= 1e-2);
}

TEST_CASE("generalized Fisher information of the Barenblatt")
{
    const auto g = make_grid(GridKind::Line1D, 1, 3.5, 2001);
    const auto m = barenblatt_matched(2.0, 1, 1.0, g);
    const auto est = fisher_p_estimate(m.density, 2.0);
    CHECK(est.value * m.profile.sigma == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(est.dropped_mass <= 1e-4);
}

TEST_CASE("relative Renyi entropy against the matched profile")
{
    SUBCASE("vanishes on the profile itself")
    {
        const auto g = make_grid(GridKind::Line1D, 1, 5.0, 2001);
        const auto m = barenblatt_matched(2.0, 1, 1.0, g);
        CHECK(std::abs(relative_renyi_hat(m.density, m.density, 2.0)) <= 1e-8);
        CHECK(std::abs(relative_renyi_hat(m.density, 2.0)) <= 1e-8);
        CHECK(std::abs(ralston(m.density, m.density, 2.0)) <= 1e-12);
    }
    SUBCASE("strictly positive on a perturbed profile")
    {
        const auto g = make_grid(GridKind::Line1D, 1, 5.0, 2001);
        const auto f = perturbed_barenblatt(2.0, g, 1.0);
        CHECK(relative_renyi_hat(f, 2.0) > 1e-4);
    }
    SUBCASE("fast diffusion: equals the two-density form")
    {
        const auto g = make_grid(GridKind::Line1D, 1, 20.0, 2001);
        std::mt19937_64 rng(3);
        for (int k = 0; k < 5; ++k) {
            const auto f = random_mixture(g, 1.0, rng);
            const auto b = matched_profile(0.75, 1, 1.0, g).density;
            CHECK(relative_renyi_hat(f, b, 0.75) == doctest::Approx(relative_renyi(f, b, 0.75)).epsilon(1e-8));
        }
    }
    SUBCASE("Shannon: relative entropy against the Gaussian")
    {
        const auto g = make_grid(GridKind::Line1D, 1, 12.0, 2001);
        std::mt19937_64 rng(4);
        const auto f = random_mixture(g, 1.0, rng);
        const auto m = gaussian_matched(1, 1.0, g).density;
        CHECK(relative_renyi_hat(f, 1.0) == doctest::Approx(relative_shannon(f, m)).epsilon(1e-8));
        CHECK(ralston(f, m, 1.0) == doctest::Approx(relative_shannon(f, m)).epsilon(1e-12));
    }
}

TEST_CASE("two-density relative Renyi entropy")
{
    const auto g = make_grid(GridKind::Line1D, 1, 12.0, 2001);
    std::mt19937_64 rng(9);
    for (int k = 0; k < 5; ++k) {
        const auto f = random_mixture(g, 1.0, rng);
        // Broad reference so the numerical support of f is inside it.
        const auto h = gaussian_on(g, 3.0);
        CHECK(std::abs(relative_renyi(f, f, 0.8)) <= 1e-10);
        CHECK(std::abs(relative_renyi(f, f, 2.0)) <= 1e-10);
        for (double p : {0.75, 1.5, 2.0})
            CHECK(relative_renyi(f, h, p) >= -1e-8);
        // p -> 1 brackets the Shannon relative entropy
        const double lo = relative_renyi(f, h, 0.99);
        const double hi = relative_renyi(f, h, 1.01);
        const double mid = relative_shannon(f, h);
        CHECK(std::min(lo, hi) <= mid + 1e-2);
        CHECK(std::max(lo, hi) >= mid - 1e-2);
        CHECK(std::abs(lo - mid) <= 1e-2);
        CHECK(std::abs(hi - mid) <= 1e-2);
    }
}

TEST_CASE("Newton-Ralston entropy is nonnegative")
{
    oracle::Gen gen(77);
    const auto g = make_grid(GridKind::Line1D, 1, 12.0, 2001);
    for (int k = 0; k < 20; ++k) {
        const auto f = random_mixture(g, 1.0, gen.engine());
        const auto h = random_mixture(g, 1.0, gen.engine());
        const double p = gen.uniform(0.5, 3.0);
        CHECK(ralston(f, h, p) >= -1e-8);
    }
}

TEST_CASE("entropy powers")
{
    const auto g = make_grid(GridKind::Line1D, 1, 12.0, 2001);
    const auto m = gaussian_matched(1, 2.0, g).density;
    const auto pw = entropy_powers(m, 1.0);
    CHECK(pw.shannon_power == doctest::Approx(2.0 * std::numbers::pi * 2.0 * std::numbers::e).epsilon(1e-3));
    CHECK(std::abs(pw.renyi_power - pw.shannon_power) <= 1e-10 * pw.shannon_power);

    std::mt19937_64 rng(12);
    const auto f = random_mixture(make_grid(GridKind::Line1D, 1, 24.0, 4001), 1.0, rng);
    for (double a : {0.5, 2.0})
        CHECK(entropy_powers(dilate(f, a), 1.0).shannon_power ==
              doctest::Approx(entropy_powers(f, 1.0).shannon_power / (a * a)).epsilon(1e-4));
}

TEST_CASE("Lambda_p is constant along the Barenblatt family and maximal there")
{
    const auto g = make_grid(GridKind::Line1D, 1, 12.0, 2001);
    for (double p : {2.0, 3.0}) {
        const auto m = barenblatt_matched(p, 1, 1.0, g);
        const double base = lambda_p(m.density, p);
        for (double s : {0.5, 2.0}) {
            const auto other = barenblatt_matched(p, 1, s, g);
            CHECK(lambda_p(other.density, p) == doctest::Approx(base).epsilon(1e-6));
        }
        std::mt19937_64 rng(21);
        for (int k = 0; k < 10; ++k)
            CHECK(lambda_p(random_mixture(g, 1.0, rng), p) <= base + 1e-8);
    }
}

TEST_CASE("entropy report row")
{
    const auto g = make_grid(GridKind::Line1D, 1, 12.0, 2001);
    std::mt19937_64 rng(31);
    const auto f = random_mixture(g, 1.0, rng);
    const auto m = gaussian_on(g, 3.0);
    const auto r = entropy_report(f, 2.0, &m);
    CHECK(r.p == 2.0);
    CHECK(r.relative_renyi.has_value());
    CHECK(r.renyi_p == doctest::Approx(renyi::renyi(f, 2.0)));
    const auto header = EntropyReport::csv_header();
    const auto row = r.to_csv_row();
    CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));
    CHECK_FALSE(entropy_report(f, 2.0).relative_renyi.has_value());
}
