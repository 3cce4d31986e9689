#pragma once
// Shared checks for the unit tests and the acceptance run.

#include <fflt/fflt.hpp>

#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace fflt::testing {

// <a, b> = sum a_i conj(b_i)
inline complex inner(std::span<const complex> a, std::span<const complex> b)
{
    complex s{};
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * std::conj(b[i]);
    return s;
}

inline std::vector<complex> random_vector(Random& rng, std::size_t n)
{
    std::vector<complex> v(n);
    for (auto& c : v)
        c = rng.unit_box();
    return v;
}

// Relative mismatch of <C f, g> and <f, C* g>.
template <typename Apply, typename Adjoint>
real adjoint_mismatch(Apply&& apply, Adjoint&& adjoint, std::span<const complex> f, std::span<const complex> g)
{
    const auto cf = apply(f);
    const auto cg = adjoint(g);
    const complex lhs = inner(cf, g);
    const complex rhs = inner(f, cg);
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
}

struct RegionReport
{
    int  samples[4] = {0, 0, 0, 0};
    int  violations[4] = {0, 0, 0, 0};
    bool ok() const
    {
        for (int c = 0; c < 4; ++c)
            if (violations[c] != 0 || samples[c] == 0)
                return false;
        return true;
    }
};

//
// Samples `count` points (y, xi) per region of the exponential-kernel
// partition and checks:
//   i)   y in Y_M           1 - e^{-y xi} <= eps
//   ii)  l < l_m           e^{-y xi} <= eps
//   iii) l_m <= l <= L_m   |e^{-y xi} - tensor interpolant| <= eps
//   iv)  l > L_m           1 - e^{-y xi} <= eps
// Scales y1, xi1 are drawn at random per sample so each region is reachable.
//
inline RegionReport check_exp_regions(real eps, int count, std::uint64_t seed)
{
    Random rng(seed);
    RegionReport rep;
    const Kernel kernel = exp_kernel();
    auto in_band = [&](const Interval& band) { return band.lo + (band.hi - band.lo) * rng.uniform_positive(); };

    for (int region = 0; region < 4; ++region)
    {
        int attempts = 0;
        while (rep.samples[region] < count && attempts < 1000 * count)
        {
            ++attempts;
            const real y1 = std::exp(rng.uniform(-2, 4));
            const real xi1 = std::exp(rng.uniform(2, 12));
            const auto p = make_partition(eps, y1, xi1, PartitionMode::exp);
            if (region == 0)
            {
                const real y = in_band(p.y_band(p.M));
                const real xi = xi1 * rng.uniform_positive();
                ++rep.samples[0];
                if (1 - std::exp(-y * xi) > eps)
                    ++rep.violations[0];
                continue;
            }
            const int m = 1 + static_cast<int>(rng.below(p.M - 1));
            const int lm = p.first_far(m);
            const int Lm = p.last_far(m);
            int l = 0;
            if (region == 1)
            {
                if (lm <= 1)
                    continue;
                l = 1 + static_cast<int>(rng.below(lm - 1));
            }
            else if (region == 2)
            {
                if (lm > Lm)
                    continue;
                l = lm + static_cast<int>(rng.below(Lm - lm + 1));
            }
            else
            {
                l = Lm + 1 + static_cast<int>(rng.below(p.M - Lm));
            }
            const real y = in_band(p.y_band(m));
            const real xi = in_band(p.xi_band(l));
            const real k = std::exp(-y * xi);
            bool good = true;
            if (region == 1)
                good = k <= eps;
            else if (region == 3)
                good = 1 - k <= eps;
            else
            {
                Interval ya = p.y_band(m), xb = p.xi_band(l);
                ya.closure = xb.closure = Closure::closed;
                const InterpBasis by(p.q, ya), bx(p.q, xb);
                const RealMatrix block = kernel_block(kernel, by, bx);
                std::vector<real> ry(p.q), rx(p.q);
                by.lagrange_row(y, ry);
                bx.lagrange_row(xi, rx);
                real approx = 0;
                for (int s = 0; s < p.q; ++s)
                    for (int r = 0; r < p.q; ++r)
                        approx += ry[s] * block(s, r) * rx[r];
                good = std::abs(k - approx) <= eps;
            }
            ++rep.samples[region];
            if (!good)
                ++rep.violations[region];
        }
    }
    return rep;
}

// Nodes j/n, j = n..1, quasi-uniform on (0, 1].
inline std::vector<real> quasi_uniform(std::size_t n)
{
    std::vector<real> v(n);
    for (std::size_t j = 0; j < n; ++j)
        v[j] = static_cast<real>(n - j) / static_cast<real>(n);
    return v;
}

} // namespace fflt::testing
