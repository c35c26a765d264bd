#include "renyi/density.hpp"

#include "renyi/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace renyi {

double PowerTail::value(double r) const
{
    return amplitude * std::pow(c0 + c2 * r * r, -exponent);
}

double PowerTail::derivative(double r) const
{
    return -2.0 * exponent * amplitude * c2 * r * std::pow(c0 + c2 * r * r, -exponent - 1.0);
}

PowerTail PowerTail::dilated(double a, int n) const
{
    return {amplitude * std::pow(a, n), c0, c2 * a * a, exponent};
}

PowerTail PowerTail::scaled(double s) const
{
    return {amplitude * s, c0, c2, exponent};
}

namespace {

Moments compute_moments(const Grid& grid, std::span<const double> v, const std::optional<PowerTail>& tail)
{
    Moments m;
    const auto x = grid.nodes();
    const auto w = grid.weights();
    for (std::size_t i = 0; i < v.size(); ++i) {
        m.mass += w[i] * v[i];
        m.energy += w[i] * x[i] * x[i] * v[i];
    }
    if (!grid.radial()) {
        // Mirror pairs are summed first so an even density has mean exactly 0.
        const std::size_t m_last = v.size() - 1;
        for (std::size_t i = 0; i < v.size() / 2; ++i)
            m.mean += w[i] * x[i] * v[i] + w[m_last - i] * x[m_last - i] * v[m_last - i];
    }
    if (tail) {
        m.mass += grid.integrate_beyond([&](double r) { return tail->value(r); });
        m.energy += grid.integrate_beyond([&](double r) { return r * r * tail->value(r); });
    }
    return m;
}

// Piecewise cubic Hermite interpolant of a density.  Nodal slopes come from
// fourth-order central differences (using even reflection at r = 0 and the
// tail, or zero, past the grid edge), then pass through a Hyman-type filter
// so monotone stretches stay monotone and the interpolant cannot dip below 0
// next to a flat (zero) region.
class HermiteSampler {
public:
    explicit HermiteSampler(const Density& f) : f_(f), grid_(f.grid())
    {
        const std::size_t n = f.size();
        const double h = grid_.spacing();
        slopes_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto j = static_cast<long>(i);
            const double d = (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * h);
            const double left = (at(j) - at(j - 1)) / h;
            const double right = (at(j + 1) - at(j)) / h;
            if (left * right > 0.0) {
                const double bound = 3.0 * std::min(std::abs(left), std::abs(right));
                slopes_[i] = right > 0.0 ? std::clamp(d, 0.0, bound) : std::clamp(d, -bound, 0.0);
            } else if (left == 0.0 || right == 0.0) {
                slopes_[i] = 0.0;
            } else {
                slopes_[i] = d;
            }
        }
    }

    double operator()(double x) const
    {
        const double r = std::abs(x);
        if (r > grid_.extent())
            return beyond(r);
        const auto nodes = grid_.nodes();
        const double coord = grid_.radial() ? r : x;
        const double h = grid_.spacing();
        const double pos = (coord - nodes.front()) / h;
        auto k = static_cast<long>(std::floor(pos));
        k = std::clamp(k, 0L, static_cast<long>(f_.size()) - 2);
        const double t = pos - static_cast<double>(k);
        const double t2 = t * t;
        const double t3 = t2 * t;
        const auto ku = static_cast<std::size_t>(k);
        const double value = (2.0 * t3 - 3.0 * t2 + 1.0) * f_[ku] + (t3 - 2.0 * t2 + t) * h * slopes_[ku] +
                             (-2.0 * t3 + 3.0 * t2) * f_[ku + 1] + (t3 - t2) * h * slopes_[ku + 1];
        return std::max(value, 0.0);
    }

private:
    double beyond(double r) const { return f_.tail() ? f_.tail()->value(r) : 0.0; }

    double at(long j) const
    {
        const auto n = static_cast<long>(f_.size());
        const double h = grid_.spacing();
        if (grid_.radial() && j < 0)
            j = -j;
        if (j < 0)
            return beyond(grid_.extent() + static_cast<double>(-j) * h);
        if (j >= n)
            return beyond(grid_.extent() + static_cast<double>(j - n + 1) * h);
        return f_[static_cast<std::size_t>(j)];
    }

    const Density& f_;
    const Grid& grid_;
    std::vector<double> slopes_;
};

Density shift_line(const Density& f, double offset)
{
    if (f.grid().radial())
        return f;
    HermiteSampler interp(f);
    const auto x = f.grid().nodes();
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = interp(x[i] + offset);
    return Density(f.grid_ptr(), std::move(out), f.tail());
}

}  // namespace

Density::Density(GridPtr grid, std::vector<double> values, std::optional<PowerTail> tail)
    : grid_(std::move(grid)), values_(std::move(values)), tail_(tail)
{
    if (!grid_)
        throw Error(ErrorCode::InvalidArgument, "density requires a grid");
    if (values_.size() != grid_->size())
        throw Error(ErrorCode::LengthMismatch, "length mismatch: density values do not match the grid");
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw Error(ErrorCode::InvalidArgument, "density values must be finite and nonnegative");
        max_ = std::max(max_, v);
    }
    moments_ = compute_moments(*grid_, values_, tail_);
}

Density Density::scaled(double factor) const
{
    std::vector<double> out(values_);
    for (double& v : out)
        v *= factor;
    std::optional<PowerTail> t;
    if (tail_)
        t = tail_->scaled(factor);
    return Density(grid_, std::move(out), t);
}

Density Density::without_tail() const
{
    return Density(grid_, values_);
}

Moments moments(const Density& f)
{
    return f.moments();
}

double sample(const Density& f, double x)
{
    return HermiteSampler(f)(x);
}

Density dilate(const Density& f, double a, double boundary_floor)
{
    if (!(a > 0.0) || !std::isfinite(a))
        throw Error(ErrorCode::InvalidArgument, "dilation factor must be positive");
    if (a == 1.0)
        return f;

    const Grid& grid = f.grid();
    const double extent = grid.extent();
    const auto x = grid.nodes();

    if (a < 1.0) {
        // Everything of f beyond |x| = a L leaves the grid.  Without a tail
        // that mass must be negligible; with a tail, the grid values out
        // there must already follow the tail's closed form.
        const double limit = boundary_floor * f.max_value();
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double r = grid.radius(i);
            if (r <= a * extent)
                continue;
            if (!f.tail()) {
                if (f[i] > limit)
                    throw Error(ErrorCode::SupportOverflow,
                                "support overflow: dilation by " + std::to_string(a) +
                                    " pushes a nonzero part of the density off the grid");
            } else {
                const double model = f.tail()->value(r);
                if (std::abs(f[i] - model) > 1e-6 * model + limit)
                    throw Error(ErrorCode::SupportOverflow,
                                "support overflow: density beyond the dilated edge does not follow its tail");
            }
        }
    }

    HermiteSampler interp(f);
    const double scale = std::pow(a, grid.dim());
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = scale * interp(a * x[i]);
    std::optional<PowerTail> tail;
    if (f.tail())
        tail = f.tail()->dilated(a, grid.dim());
    return Density(f.grid_ptr(), std::move(out), tail);
}

Density normalize(const Density& f, double target_energy)
{
    if (!(target_energy > 0.0))
        throw Error(ErrorCode::InvalidArgument, "target energy must be positive");
    if (!(f.mass() > 0.0))
        throw Error(ErrorCode::ZeroMass, "zero mass: cannot normalize");

    const double length_scale = f.grid().extent();
    const auto centered_enough = [&](const Density& g) {
        return std::abs(g.mean() / g.mass()) <= 1e-13 * length_scale;
    };

    if (std::abs(f.mass() - 1.0) <= 1e-12 && centered_enough(f) &&
        std::abs(f.energy() - target_energy) <= 1e-12 * target_energy)
        return f;

    Density g = f;
    for (int it = 0; it < 4 && !centered_enough(g); ++it) {
        if (g.tail())
            throw Error(ErrorCode::InvalidArgument, "cannot recenter a density with an analytic tail");
        g = shift_line(g, g.mean() / g.mass());
    }

    const double spread = g.energy() / g.mass() - std::pow(g.mean() / g.mass(), 2);
    if (!(spread > 1e-14 * length_scale * length_scale))
        throw Error(ErrorCode::ZeroEnergy, "zero energy: point mass cannot be normalized");

    // E(f_a)/M(f_a) = (E/M) / a^2 up to interpolation error; iterate on that.
    double a = std::sqrt(spread / target_energy);
    Density dilated = dilate(g, a);
    for (int it = 0; it < 30; ++it) {
        const double ratio = dilated.energy() / dilated.mass();
        const double miss = std::log(ratio / target_energy);
        if (std::abs(miss) <= 1e-14)
            break;
        a *= std::exp(0.5 * miss);
        dilated = dilate(g, a);
    }
    return dilated.scaled(1.0 / dilated.mass());
}

double lp_integral(const Density& f, double p)
{
    if (!(p > 0.0))
        throw Error(ErrorCode::InvalidArgument, "L^p integral needs p > 0");
    if (p == 1.0)
        return f.mass();
    const auto w = f.grid().weights();
    const double floor = f.floor();
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] > floor)
            sum += w[i] * std::pow(f[i], p);
    sum += tail_integral(f, [p](double, double v, double) { return std::pow(v, p); });
    return sum;
}

double tail_integral(const Density& f, const std::function<double(double, double, double)>& g)
{
    if (!f.tail())
        return 0.0;
    const PowerTail& t = *f.tail();
    // Far out the tail underflows; integrands like v log v are then 0 by continuity.
    return f.grid().integrate_beyond([&](double r) {
        const double v = t.value(r);
        return v > 0.0 ? g(r, v, t.derivative(r)) : 0.0;
    });
}

double joint_tail_integral(const Density& f, const Density& g,
                           const std::function<double(double, double, double)>& integrand)
{
    if (!f.tail() || !g.tail())
        throw Error(ErrorCode::InvalidArgument, "joint tail integral needs two tails");
    const PowerTail& tf = *f.tail();
    const PowerTail& tg = *g.tail();
    return f.grid().integrate_beyond([&](double r) {
        const double fv = tf.value(r);
        const double gv = tg.value(r);
        return fv > 0.0 && gv > 0.0 ? integrand(r, fv, gv) : 0.0;
    });
}

bool is_normalized(const Density& f, double target_energy, double tol)
{
    return std::abs(f.mass() - 1.0) <= tol && std::abs(f.mean()) <= tol * std::sqrt(target_energy) &&
           std::abs(f.energy() - target_energy) <= tol * target_energy;
}

}  // namespace renyi
