#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace renyi {

enum class GridKind { Line1D, RadialND };

const char* to_string(GridKind kind);
GridKind grid_kind_from_string(const std::string& name);

/// Surface area of the unit sphere in R^n (omega_1 = 2, omega_2 = 2 pi, omega_3 = 4 pi).
double unit_sphere_area(int n);

/**
 * Uniform discretization of either the segment [-L, L] (Line1D, n = 1) or the
 * radial half-line [0, R] of a radially symmetric function on R^n (RadialND).
 *
 * Quadrature weights absorb the geometry: integrate(values) approximates the
 * integral over R^n of the function whose samples are `values`.  On a radial
 * grid the weight of node i is the trapezoid weight times omega_n r_i^{n-1}.
 */
class Grid {
public:
    static constexpr std::size_t min_points = 16;

    Grid(GridKind kind, int n, double extent, std::size_t points);

    GridKind kind() const noexcept { return kind_; }
    int dim() const noexcept { return n_; }
    double extent() const noexcept { return extent_; }
    double spacing() const noexcept { return h_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    bool radial() const noexcept { return kind_ == GridKind::RadialND; }

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }

    /// |x_i|: the radius of node i (the coordinate itself on a radial grid).
    double radius(std::size_t i) const noexcept;

    /// Weighted sum sum_i w_i v_i.
    double integrate(std::span<const double> values) const;

    /// Central differences inside, second-order one-sided at both ends.
    std::vector<double> gradient(std::span<const double> values) const;

    /**
     * Integral of a radial function g(r) over {|x| > extent}, i.e. outside
     * the discretized region, measured with the same geometry as the grid
     * (both half-lines for Line1D, omega_n r^{n-1} dr for RadialND).
     * Returns the quadrature error estimate through `error` when non-null.
     */
    double integrate_beyond(const std::function<double(double)>& g, double* error = nullptr) const;

    /// Density of the outer measure at radius r (2 on the line, omega_n r^{n-1} radially).
    double outer_measure(double r) const noexcept;

    bool operator==(const Grid& other) const noexcept;

private:
    GridKind kind_;
    int n_;
    double extent_;
    double h_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(GridKind kind, int n, double extent, std::size_t points);

double integrate(const Grid& grid, std::span<const double> values);
std::vector<double> gradient(const Grid& grid, std::span<const double> values);

}  // namespace renyi
