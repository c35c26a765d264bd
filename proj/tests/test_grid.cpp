#include "renyi/error.hpp"
#include "renyi/grid.hpp"

#include "support/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace renyi;

namespace {

std::vector<double> apply(const Grid& g, double (*fn)(double))
{
    std::vector<double> v;
    for (double x : g.nodes())
        v.push_back(fn(x));
    return v;
}

}  // namespace

TEST_CASE("line grid with 201 points on [-1, 1]")
{
    const auto g = make_grid(GridKind::Line1D, 1, 1.0, 201);
    CHECK(g->spacing() == doctest::Approx(0.01).epsilon(1e-14));
    double total = 0.0;
    for (double w : g->weights())
        total += w;
    CHECK(total == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g->nodes().front() == -1.0);
    CHECK(g->nodes().back() == 1.0);
}

TEST_CASE("nodes are symmetric, increasing and uniformly spaced")
{
    for (std::size_t m : {16u, 101u, 1000u, 2001u}) {
        const auto g = make_grid(GridKind::Line1D, 1, 7.3, m);
        const auto x = g->nodes();
        for (std::size_t i = 0; i < m; ++i) {
            CHECK(x[i] == -x[m - 1 - i]);
            if (i > 0) {
                CHECK(x[i] > x[i - 1]);
                CHECK(std::abs((x[i] - x[i - 1]) - g->spacing()) <= 1e-12 * g->spacing() * 10);
            }
        }
    }
}

TEST_CASE("radial grid volume of the unit ball")
{
    const auto g = make_grid(GridKind::RadialND, 3, 1.0, 401);
    CHECK(g->nodes().front() == 0.0);
    std::vector<double> one(g->size(), 1.0);
    CHECK(g->integrate(one) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-4));
    for (double w : g->weights())
        CHECK(w >= 0.0);
}

TEST_CASE("radial grid in one dimension measures [-1, 1]")
{
    const auto g = make_grid(GridKind::RadialND, 1, 1.0, 101);
    std::vector<double> one(g->size(), 1.0);
    CHECK(g->integrate(one) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("unit sphere areas")
{
    CHECK(unit_sphere_area(1) == doctest::Approx(2.0));
    CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * std::numbers::pi));
    CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * std::numbers::pi));
}

TEST_CASE("grid construction errors")
{
    auto code_of = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Io;
    };
    CHECK(code_of([] { make_grid(GridKind::Line1D, 1, 10.0, 8); }) == ErrorCode::TooCoarse);
    CHECK(code_of([] { make_grid(GridKind::Line1D, 1, 0.0, 101); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { make_grid(GridKind::Line1D, 1, -1.0, 101); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { make_grid(GridKind::Line1D, 2, 1.0, 101); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { make_grid(GridKind::RadialND, 0, 1.0, 101); }) == ErrorCode::InvalidArgument);
    CHECK(grid_kind_from_string("RadialND") == GridKind::RadialND);
    CHECK_THROWS_AS(grid_kind_from_string("Cartesian"), Error);
}

TEST_CASE("standard Gaussian integrates to one")
{
    const auto g = make_grid(GridKind::Line1D, 1, 10.0, 2001);
    const auto v = apply(*g, [](double x) { return oracle::gaussian(x, 0.0, 1.0); });
    CHECK(std::abs(g->integrate(v) - 1.0) <= 1e-8);
    CHECK(g->integrate(std::vector<double>(g->size(), 0.0)) == 0.0);
    CHECK_THROWS_AS(g->integrate(std::vector<double>(5, 1.0)), Error);
}

TEST_CASE("quadrature is second order")
{
    auto err = [](std::size_t m) {
        const auto g = make_grid(GridKind::Line1D, 1, 3.0, m);
        const auto v = apply(*g, [](double x) { return std::cos(x) + x * x; });
        const double exact = 2.0 * std::sin(3.0) + 18.0;
        return std::abs(g->integrate(v) - exact);
    };
    const double e1 = err(101), e2 = err(201), e3 = err(401);
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
    CHECK(e2 / e3 >= 3.5);
    CHECK(e2 / e3 <= 4.5);

    auto radial_err = [](std::size_t m) {
        const auto g = make_grid(GridKind::RadialND, 3, 2.0, m);
        std::vector<double> v;
        for (double r : g->nodes())
            v.push_back(std::cos(r));
        // 4 pi int_0^2 r^2 cos r dr
        const double exact = 4.0 * std::numbers::pi * (2.0 * 2.0 * std::cos(2.0) + (4.0 - 2.0) * std::sin(2.0));
        return std::abs(g->integrate(v) - exact);
    };
    const double r1 = radial_err(101), r2 = radial_err(201);
    CHECK(r1 / r2 >= 3.5);
    CHECK(r1 / r2 <= 4.5);
}

TEST_CASE("gradient on affine, quadratic and constant data")
{
    const auto g = make_grid(GridKind::Line1D, 1, 1.0, 201);
    const auto affine = g->gradient(apply(*g, [](double x) { return 3.0 * x + 1.0; }));
    for (double d : affine)
        CHECK(d == doctest::Approx(3.0).epsilon(1e-12));
    const auto quad = g->gradient(apply(*g, [](double x) { return x * x; }));
    const auto x = g->nodes();
    for (std::size_t i = 1; i + 1 < g->size(); ++i)
        CHECK(std::abs(quad[i] - 2.0 * x[i]) <= 1e-10);
    // one-sided second-order ends are exact on quadratics too
    CHECK(std::abs(quad.front() - 2.0 * x.front()) <= 1e-10);
    CHECK(std::abs(quad.back() - 2.0 * x.back()) <= 1e-10);
    for (double d : g->gradient(std::vector<double>(g->size(), 4.2)))
        CHECK(d == 0.0);
    CHECK_THROWS_AS(g->gradient(std::vector<double>(3, 1.0)), Error);
}

TEST_CASE("integral of the gradient of a function supported inside the grid vanishes")
{
    const auto g = make_grid(GridKind::Line1D, 1, 5.0, 1001);
    const auto v = apply(*g, [](double x) { return std::abs(x) < 2.0 ? std::pow(4.0 - x * x, 3) : 0.0; });
    CHECK(std::abs(g->integrate(g->gradient(v))) <= 1e-10);
}

TEST_CASE("outer measure")
{
    const auto line = make_grid(GridKind::Line1D, 1, 2.0, 101);
    CHECK(line->outer_measure(3.0) == 2.0);
    const auto ball = make_grid(GridKind::RadialND, 3, 2.0, 101);
    CHECK(ball->outer_measure(3.0) == doctest::Approx(4.0 * std::numbers::pi * 9.0));
    // integrate_beyond of exp(-r) on the line: 2 e^{-L}
    double err = 0.0;
    CHECK(line->integrate_beyond([](double r) { return std::exp(-r); }, &err) ==
          doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-10));
    CHECK(err < 1e-8);
}
