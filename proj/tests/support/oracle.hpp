#pragma once

// Closed forms used as independent references in the tests.  Nothing here
// calls into the library except for grid construction helpers.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline double sphere_area(int n)
{
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

/// Barenblatt constants in closed form: B(y) = (c -/+ k |y|^2)^{1/(p-1)} with
/// k = |p-1| / (2 p sigma), normalized to unit mass and second moment E0.
struct Barenblatt {
    double p, c_b, sigma, k, radius;
    int n;

    double value(double r) const
    {
        if (p > 1.0) {
            const double base = c_b - k * r * r;
            return base > 0.0 ? std::pow(base, 1.0 / (p - 1.0)) : 0.0;
        }
        return std::pow(c_b + k * r * r, 1.0 / (p - 1.0));
    }

    /// int B^q over R^n, by Beta functions.
    double power_integral(double q) const
    {
        const double ratio = c_b / k;
        const double half = 0.5 * n;
        if (p > 1.0) {
            const double m = q / (p - 1.0);
            return 0.5 * sphere_area(n) * std::pow(ratio, half) * std::pow(c_b, m) * boost::math::beta(half, m + 1.0);
        }
        const double m = q / (1.0 - p);
        return 0.5 * sphere_area(n) * std::pow(ratio, half) * std::pow(c_b, -m) * boost::math::beta(half, m - half);
    }
};

inline Barenblatt barenblatt(double p, int n, double E0)
{
    const double half = 0.5 * n;
    Barenblatt b{p, 0.0, 0.0, 0.0, std::numeric_limits<double>::infinity(), n};
    double ratio = 0.0;  // c / k from E / M
    double beta = 0.0;
    double m = 0.0;
    if (p > 1.0) {
        m = 1.0 / (p - 1.0);
        ratio = E0 / half * (half + m + 1.0);
        beta = boost::math::beta(half, m + 1.0);
        // mass 1: (w/2) ratio^{n/2} c^m beta = 1
        b.c_b = std::pow(1.0 / (0.5 * sphere_area(n) * std::pow(ratio, half) * beta), 1.0 / m);
    } else {
        m = 1.0 / (1.0 - p);
        ratio = E0 / half * (m - half - 1.0);
        beta = boost::math::beta(half, m - half);
        b.c_b = std::pow(0.5 * sphere_area(n) * std::pow(ratio, half) * beta, 1.0 / m);
    }
    b.k = b.c_b / ratio;
    b.sigma = std::abs(p - 1.0) / (2.0 * p * b.k);
    if (p > 1.0)
        b.radius = std::sqrt(ratio);
    return b;
}

/// Integral of g(r) over R^n for a radial function, by adaptive Gauss-Kronrod on [0, R].
template <class F>
double radial_integral(F g, int n, double R)
{
    auto integrand = [&](double r) { return sphere_area(n) * std::pow(r, n - 1) * g(r); };
    if (n == 1)
        return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, R, 15, 1e-14);
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, R, 15, 1e-14);
}

inline double gaussian(double x, double mean, double var)
{
    return std::exp(-(x - mean) * (x - mean) / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

/// Shannon entropy of the centred Gaussian with per-coordinate variance s in R^n.
inline double gaussian_entropy(int n, double s) { return 0.5 * n * std::log(2.0 * std::numbers::pi * s * std::numbers::e); }

/// int g^p for the centred Gaussian in R^n with per-coordinate variance s.
inline double gaussian_power_integral(int n, double s, double p)
{
    return std::pow(2.0 * std::numbers::pi * s, 0.5 * n * (1.0 - p)) * std::pow(p, -0.5 * n);
}

/// Deterministic generators for the property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
