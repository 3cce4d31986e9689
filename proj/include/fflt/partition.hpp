#pragma once
//
// Dyadic decomposition of [0, y1] and [0, xi1] driven by the target accuracy.
//
//   Y_M = [0, y1 / 2^(M-1)],   Y_m = (y1 / 2^m, y1 / 2^(m-1)],  1 <= m < M
//
// and the same for the frequency side with xi1. For every spatial band m < M
// the frequency bands l in [l_m, L_m] carry an interpolated kernel block,
// l < l_m is negligible (kernel <= eps) and l > L_m is saturated
// (1 - kernel <= eps).
//

#include <fflt/interp.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>

namespace fflt {

enum class PartitionMode
{
    exp,     // exponential kernel, zero/one approximation outside [l_m, L_m]
    general, // asymptotically smooth kernel, all far blocks interpolated
    disk     // polynomial evaluation in the unit disk
};

namespace detail {

// ceil() that ignores rounding noise just above an integer
inline int ceil_snapped(real x)
{
    const real r = std::round(x);
    if (std::abs(x - r) <= 1e-12 * std::max<real>(1, std::abs(x)))
        return static_cast<int>(r);
    return static_cast<int>(std::ceil(x));
}

inline void check_epsilon(real epsilon)
{
    if (!(epsilon > 0 && epsilon < 1))
        throw std::invalid_argument("target accuracy must lie in (0, 1)");
}

} // namespace detail

// q = max(2, ceil(1/2 + log_4(1/eps)))
inline int order_for_accuracy(real epsilon)
{
    detail::check_epsilon(epsilon);
    return std::max(2, detail::ceil_snapped(0.5 + std::log2(1 / epsilon) / 2));
}

// Band m in {1..M} with value in Y_m, where Y_M is closed at 0 and the other
// bands are open on the left.
inline int band_index(real value, real top, int M)
{
    if (!(value >= 0 && value <= top))
        throw std::domain_error("value outside [0, top]");
    if (M < 1)
        throw std::invalid_argument("band count must be positive");
    if (value == 0)
        return M;

    const real ratio = std::log2(top / value);
    int m = ratio >= M ? M : static_cast<int>(std::floor(ratio)) + 1;
    m = std::clamp(m, 1, M);
    // exact check against the band edges, which are exact powers-of-two scalings of top
    while (m < M && !(value > std::ldexp(top, -m)))
        ++m;
    while (m > 1 && value > std::ldexp(top, -(m - 1)))
        --m;
    return m;
}

inline Interval band_interval(real top, int m, int M)
{
    if (m == M)
        return {0, std::ldexp(top, -(M - 1)), Closure::closed};
    return {std::ldexp(top, -m), std::ldexp(top, -(m - 1)), Closure::half_open_left};
}

struct DyadicPartition
{
    real          epsilon = 0;
    real          y1      = 0;
    real          xi1     = 0;
    int           q       = 0;
    int           M       = 0;
    PartitionMode mode    = PartitionMode::exp;

    Interval y_band(int m) const { return band_interval(y1, m, M); }
    Interval xi_band(int l) const { return band_interval(xi1, l, M); }

    // l_m, the first interpolated frequency band for spatial band m < M
    int first_far(int m) const
    {
        if (mode == PartitionMode::general)
            return 1;
        const real v = std::log2(y1 * xi1) - m - std::log2(std::log(1 / epsilon));
        const real lm = std::floor(v) + 1;
        return static_cast<int>(std::clamp<real>(lm, 1, last_far(m) + 1));
    }

    // L_m, the last interpolated frequency band for spatial band m < M
    int last_far(int m) const { return mode == PartitionMode::general ? M - 1 : M - m; }
};

//
// n is the problem size; required for the general and disk modes. An explicit
// order replaces the accuracy-driven q (used by the generalized kernels and by
// order sweeps).
//
inline DyadicPartition make_partition(real epsilon, real y1, real xi1, PartitionMode mode,
                                      std::optional<std::size_t> n = std::nullopt,
                                      std::optional<int> order = std::nullopt)
{
    detail::check_epsilon(epsilon);
    if (!(y1 > 0) || !(xi1 > 0) || !std::isfinite(y1) || !std::isfinite(xi1))
        throw std::invalid_argument("interval lengths must be positive and finite");
    if (mode != PartitionMode::exp && (!n || *n == 0))
        throw std::invalid_argument("problem size required for general and disk partitions");
    if (order && *order < 1)
        throw std::invalid_argument("interpolation order must be at least 1");

    DyadicPartition p;
    p.epsilon = epsilon;
    p.y1      = y1;
    p.xi1     = xi1;
    p.mode    = mode;
    p.q       = order ? *order : order_for_accuracy(epsilon);

    const real base = std::ceil(std::log2(y1 * xi1 / epsilon)) + 1;
    real m = base;
    switch (mode)
    {
    case PartitionMode::exp:
        break;
    case PartitionMode::general:
        m = std::ceil(std::log2(y1 * xi1 * static_cast<real>(*n) / epsilon)) + 1;
        break;
    case PartitionMode::disk:
        // the exponential bound is kept as a floor in case the exponents exceed n
        m = std::max(base, std::ceil(std::log2(static_cast<real>(*n) * std::log(1 / epsilon) / epsilon)) + 1);
        break;
    }
    p.M = static_cast<int>(std::max<real>(2, m));
    return p;
}

} // namespace fflt
