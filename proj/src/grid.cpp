#include "renyi/grid.hpp"

#include "renyi/error.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace renyi {

const char* to_string(GridKind kind)
{
    return kind == GridKind::Line1D ? "Line1D" : "RadialND";
}

GridKind grid_kind_from_string(const std::string& name)
{
    if (name == "Line1D")
        return GridKind::Line1D;
    if (name == "RadialND")
        return GridKind::RadialND;
    throw Error(ErrorCode::InvalidArgument, "unknown grid kind '" + name + "'");
}

double unit_sphere_area(int n)
{
    // 2 pi^{n/2} / Gamma(n/2)
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

Grid::Grid(GridKind kind, int n, double extent, std::size_t points)
    : kind_(kind), n_(n), extent_(extent)
{
    if (points < min_points)
        throw Error(ErrorCode::TooCoarse,
                    "too coarse: " + std::to_string(points) + " points, need at least " +
                        std::to_string(min_points));
    if (!(extent > 0.0) || !std::isfinite(extent))
        throw Error(ErrorCode::InvalidArgument, "grid extent must be positive");
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
    if (kind == GridKind::Line1D && n != 1)
        throw Error(ErrorCode::InvalidArgument, "Line1D grids require n = 1");

    nodes_.resize(points);
    weights_.resize(points);
    const auto last = static_cast<double>(points - 1);
    if (kind == GridKind::Line1D) {
        h_ = 2.0 * extent / last;
        // Integer numerators keep the node set exactly symmetric about 0.
        for (std::size_t i = 0; i < points; ++i)
            nodes_[i] = (2.0 * static_cast<double>(i) - last) * extent / last;
        for (std::size_t i = 0; i < points; ++i)
            weights_[i] = h_;
    } else {
        h_ = extent / last;
        const double omega = unit_sphere_area(n);
        for (std::size_t i = 0; i < points; ++i) {
            nodes_[i] = static_cast<double>(i) * extent / last;
            weights_[i] = h_ * omega * std::pow(nodes_[i], n - 1);
        }
    }
    weights_.front() *= 0.5;
    weights_.back() *= 0.5;
}

double Grid::radius(std::size_t i) const noexcept
{
    return std::abs(nodes_[i]);
}

double Grid::integrate(std::span<const double> values) const
{
    if (values.size() != nodes_.size())
        throw Error(ErrorCode::LengthMismatch,
                    "length mismatch: " + std::to_string(values.size()) + " values on a " +
                        std::to_string(nodes_.size()) + "-node grid");
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        sum += weights_[i] * values[i];
    return sum;
}

std::vector<double> Grid::gradient(std::span<const double> values) const
{
    const std::size_t m = values.size();
    if (m != nodes_.size())
        throw Error(ErrorCode::LengthMismatch, "length mismatch in gradient");
    if (m < 3)
        throw Error(ErrorCode::TooCoarse, "gradient needs at least 3 nodes");
    std::vector<double> out(m);
    const double inv2h = 0.5 / h_;
    for (std::size_t i = 1; i + 1 < m; ++i)
        out[i] = (values[i + 1] - values[i - 1]) * inv2h;
    // Differences first, so constant data give exactly zero.
    out[0] = (4.0 * (values[1] - values[0]) - (values[2] - values[0])) * inv2h;
    out[m - 1] = ((values[m - 3] - values[m - 1]) - 4.0 * (values[m - 2] - values[m - 1])) * inv2h;
    return out;
}

double Grid::outer_measure(double r) const noexcept
{
    if (kind_ == GridKind::Line1D)
        return 2.0;
    return unit_sphere_area(n_) * std::pow(r, n_ - 1);
}

double Grid::integrate_beyond(const std::function<double(double)>& g, double* error) const
{
    boost::math::quadrature::exp_sinh<double> integrator;
    const double omega = kind_ == GridKind::Line1D ? 2.0 : unit_sphere_area(n_);
    const int power = kind_ == GridKind::Line1D ? 0 : n_ - 1;
    auto integrand = [&](double r) {
        const double v = g(r);
        return v == 0.0 ? 0.0 : omega * std::pow(r, power) * v;
    };
    double err = 0.0;
    double l1 = 0.0;
    const double value = integrator.integrate(integrand, extent_, std::numeric_limits<double>::infinity(),
                                              1e-13, &err, &l1);
    if (error)
        *error = err;
    return value;
}

bool Grid::operator==(const Grid& other) const noexcept
{
    return kind_ == other.kind_ && n_ == other.n_ && extent_ == other.extent_ &&
           nodes_.size() == other.nodes_.size();
}

GridPtr make_grid(GridKind kind, int n, double extent, std::size_t points)
{
    return std::make_shared<const Grid>(kind, n, extent, points);
}

double integrate(const Grid& grid, std::span<const double> values)
{
    return grid.integrate(values);
}

std::vector<double> gradient(const Grid& grid, std::span<const double> values)
{
    return grid.gradient(values);
}

}  // namespace renyi
