#pragma once
//
// Chebyshev interpolation on real intervals.
//
// Nodes are the zeros of the q-th Chebyshev polynomial mapped affinely onto
// the interval, ordered as produced by the cosine formula (decreasing).
// Lagrange basis values are evaluated with the barycentric formula.
//

#include <fflt/matrix.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fflt {

enum class Closure
{
    closed,         // [lo, hi]
    half_open_left  // (lo, hi]
};

struct Interval
{
    real    lo      = 0;
    real    hi      = 0;
    Closure closure = Closure::closed;

    real diam() const noexcept { return hi - lo; }
    real midpoint() const noexcept { return 0.5 * (lo + hi); }

    // distance to the origin for intervals in [0, inf)
    real dist0() const noexcept { return lo; }

    bool admissible() const noexcept { return lo >= 0 && diam() <= dist0(); }

    bool contains(real v) const noexcept
    {
        return (closure == Closure::closed ? v >= lo : v > lo) && v <= hi;
    }
};

inline bool admissible(const Interval& a, const Interval& b) noexcept
{
    return a.admissible() && b.admissible();
}

// Relative slack (in units of diam) for points that should lie in an interval
// but were computed in floating point next to its boundary.
inline constexpr real boundary_tolerance = 1e-12;
// Points this close (relative to diam) to a node evaluate as that node.
inline constexpr real node_collision_tolerance = 1e-14;

class InterpBasis
{
public:
    InterpBasis(int q, Interval interval) : q_(q), interval_(interval)
    {
        if (q < 1)
            throw std::invalid_argument("interpolation order must be at least 1");
        if (!(interval.lo < interval.hi) || !std::isfinite(interval.lo) || !std::isfinite(interval.hi))
            throw std::invalid_argument("interpolation interval must satisfy lo < hi");

        nodes_.resize(q);
        weights_.resize(q);
        const real c = interval.midpoint();
        const real h = 0.5 * interval.diam();
        for (int j = 0; j < q; ++j)
        {
            const real angle = (2 * j + 1) * std::numbers::pi / (2.0 * q);
            nodes_[j]        = c + h * std::cos(angle);
            weights_[j]      = (j % 2 == 0 ? 1.0 : -1.0) * std::sin(angle);
        }
    }

    int                     order() const noexcept { return q_; }
    const Interval&         interval() const noexcept { return interval_; }
    std::span<const real>   nodes() const noexcept { return nodes_; }
    std::span<const real>   weights() const noexcept { return weights_; }

    // Writes L_0(y), ..., L_{q-1}(y) into out.
    void lagrange_row(real y, std::span<real> out) const
    {
        const real slack = boundary_tolerance * interval_.diam();
        if (!(y >= interval_.lo - slack && y <= interval_.hi + slack))
            throw std::domain_error("point " + std::to_string(y) + " lies outside the interpolation interval");
        lagrange_row_unchecked(y, out.data());
    }

    // As lagrange_row for a point already known to lie in the interval.
    void lagrange_row_unchecked(real y, real* out) const
    {
        const real denom = barycentric_terms(y, out);
        for (int r = 0; r < q_; ++r)
            out[r] /= denom;
    }

    // Unnormalized barycentric terms w_r / (y - t_r); returns their sum, so
    // L_r(y) = out[r] / sum. At a node the terms are a unit vector.
    // Q > 0 fixes the order at compile time (it must equal order()). Checked =
    // false skips the node collision test for points known to pass it.
    template <int Q = 0, bool Checked = true>
    real barycentric_terms(real y, real* __restrict out) const
    {
        const int q = Q > 0 ? Q : q_;
        const real* __restrict t = nodes_.data();
        const real* __restrict w = weights_.data();
        if constexpr (Checked)
        {
            if (collides(y)) [[unlikely]]
            {
                for (int r = 0; r < q; ++r)
                    out[r] = y - t[r];
                return unit_terms(collision_distance(), out);
            }
        }
        real denom = 0;
        for (int r = 0; r < q; ++r)
        {
            out[r] = w[r] / (y - t[r]);
            denom += out[r];
        }
        return denom;
    }

    // True when y is within rounding distance of an interpolation node.
    bool collides(real y) const
    {
        const real collide = collision_distance();
        for (int r = 0; r < q_; ++r)
            if (std::abs(y - nodes_[r]) <= collide)
                return true;
        return false;
    }

    // Interpolant of the node values at y.
    template <typename T>
    T interpolate(std::span<const T> node_values, real y) const
    {
        std::vector<real> row(q_);
        lagrange_row(y, row);
        T acc{};
        for (int r = 0; r < q_; ++r)
            acc += row[r] * node_values[r];
        return acc;
    }

private:
    real collision_distance() const { return node_collision_tolerance * interval_.diam(); }

    // out holds y - t_r with some entry within collide of zero
    real unit_terms(real collide, real* out) const
    {
        int r = 0;
        while (std::abs(out[r]) > collide)
            ++r;
        std::fill(out, out + q_, 0.0);
        out[r] = 1.0;
        return 1.0;
    }

    int               q_;
    Interval          interval_;
    std::vector<real> nodes_;
    std::vector<real> weights_;
};

inline InterpBasis make_basis(int q, const Interval& interval)
{
    return InterpBasis(q, interval);
}

// Matrix with entries L_r(points[i]), one row per point.
// Calls body(std::integral_constant<int, q>{}) for orders up to 32 and
// body(std::integral_constant<int, 0>{}) otherwise, so hot loops can unroll.
template <typename Body>
void with_static_order(int q, Body&& body)
{
    const bool done = [&]<int... Q>(std::integer_sequence<int, Q...>) {
        return ((q == Q + 1 ? (body(std::integral_constant<int, Q + 1>{}), true) : false) || ...);
    }(std::make_integer_sequence<int, 32>{});
    if (!done)
        body(std::integral_constant<int, 0>{});
}

inline RealMatrix lagrange_matrix(const InterpBasis& basis, std::span<const real> points)
{
    RealMatrix l(points.size(), static_cast<std::size_t>(basis.order()));
    for (std::size_t i = 0; i < points.size(); ++i)
        basis.lagrange_row(points[i], l.row(i));
    return l;
}

// Chebyshev-Lobatto sample of an interval, endpoints included.
inline std::vector<real> chebyshev_grid(const Interval& a, int size)
{
    std::vector<real> g(size);
    if (size == 1)
    {
        g[0] = a.midpoint();
        return g;
    }
    for (int k = 0; k < size; ++k)
        g[k] = a.midpoint() + 0.5 * a.diam() * std::cos(std::numbers::pi * k / (size - 1));
    g.front() = a.hi;
    g.back()  = a.lo;
    return g;
}

//
// Max over a grid x grid tensor sample of |kappa - I_q^{AxB} kappa|, where the
// tensor interpolant uses kernel values at the node pairs of A and B.
//
template <typename Kernel>
real interp_error_sup(const Kernel& kernel, const Interval& a, const Interval& b, int q, int grid)
{
    if (grid < 2)
        throw std::invalid_argument("interp_error_sup needs grid >= 2");

    const InterpBasis ba(q, a);
    const InterpBasis bb(q, b);

    RealMatrix k(q, q);
    for (int s = 0; s < q; ++s)
        for (int r = 0; r < q; ++r)
            k(s, r) = kernel(ba.nodes()[s], bb.nodes()[r]);

    const auto ys  = chebyshev_grid(a, grid);
    const auto xis = chebyshev_grid(b, grid);
    const auto ly  = lagrange_matrix(ba, ys);
    const auto lx  = lagrange_matrix(bb, xis);

    // t = K * Lx^T, one column per xi sample
    RealMatrix t(q, grid);
    for (int s = 0; s < q; ++s)
        for (int j = 0; j < grid; ++j)
        {
            real acc = 0;
            for (int r = 0; r < q; ++r)
                acc += k(s, r) * lx(j, r);
            t(s, j) = acc;
        }

    real worst = 0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
        {
            real approx = 0;
            for (int s = 0; s < q; ++s)
                approx += ly(i, s) * t(s, j);
            worst = max_nan(worst, std::abs(kernel(ys[i], xis[j]) - approx));
        }
    return worst;
}

} // namespace fflt
