#pragma once
//
// Kernels kappa(y, xi) together with their asymptotic smoothness constants
//
//   |y^q d^q/dy^q kappa| <= C q! mu^q q^nu (y xi)^-s   (and likewise in xi)
//
// and the constants C_tilde, c of the resulting local interpolation bound
// ||kappa - I_q kappa|| <= C_tilde c^q (dist(A,0) dist(B,0))^-s.
//

#include <fflt/interp.hpp>

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace fflt {

struct Smoothness
{
    real C  = 0;
    real mu = 0;
    real nu = 0;
    real s  = 0;
};

struct LocalErrorConstants
{
    real C_tilde = 0;
    real c       = 0;
};

enum class KernelKind
{
    exponential,
    bessel_half,
    custom
};

class SingularKernelError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

class Kernel
{
public:
    using Fn = std::function<real(real, real)>;

    Kernel(std::string name, Fn fn, Smoothness smooth, LocalErrorConstants local,
           KernelKind kind = KernelKind::custom)
        : name_(std::move(name)), fn_(std::move(fn)), smooth_(smooth), local_(local), kind_(kind)
    {}

    real operator()(real y, real xi) const { return fn_(y, xi); }

    const std::string&         name() const noexcept { return name_; }
    const Smoothness&          smoothness() const noexcept { return smooth_; }
    const LocalErrorConstants& local_error() const noexcept { return local_; }
    KernelKind                 kind() const noexcept { return kind_; }

private:
    std::string         name_;
    Fn                  fn_;
    Smoothness          smooth_;
    LocalErrorConstants local_;
    KernelKind          kind_;
};

// e^{-y xi}; C_tilde c^q = 2^{1-2q}
inline Kernel exp_kernel()
{
    // exp underflows to exactly 0 past 745.2; skipping the call is much faster
    return Kernel("exp", [](real y, real xi) { const real t = y * xi; return t > 746 ? 0.0 : std::exp(-t); },
                  {1 / std::sqrt(2 * std::numbers::pi), 1, -0.5, 0}, {2, 0.25},
                  KernelKind::exponential);
}

// K_{1/2}(y xi) = sqrt(pi / (2 y xi)) e^{-y xi}
inline Kernel bessel_half_kernel()
{
    return Kernel(
        "bessel",
        [](real y, real xi) {
            const real t = y * xi;
            if (!(t > 0))
                throw SingularKernelError("K_1/2 kernel is singular for y*xi <= 0");
            return std::sqrt(std::numbers::pi / (2 * t)) * std::exp(-t);
        },
        {std::sqrt(std::numbers::pi / 2), 1, 0, 0.5}, {2 * std::numbers::pi, 1.0 / 3.0},
        KernelKind::bessel_half);
}

inline Kernel kernel_by_name(const std::string& name)
{
    if (name == "exp")
        return exp_kernel();
    if (name == "bessel")
        return bessel_half_kernel();
    throw std::invalid_argument("unknown kernel '" + name + "' (expected exp or bessel)");
}

// (s, r) entry kappa(y_s^A, xi_r^B) at the Chebyshev nodes of A and B.
inline RealMatrix kernel_block(const Kernel& kernel, const InterpBasis& a, const InterpBasis& b)
{
    RealMatrix k(a.order(), b.order());
    for (int s = 0; s < a.order(); ++s)
        for (int r = 0; r < b.order(); ++r)
            k(s, r) = kernel(a.nodes()[s], b.nodes()[r]);
    return k;
}

inline RealMatrix kernel_block(const Kernel& kernel, const Interval& a, const Interval& b, int q)
{
    return kernel_block(kernel, InterpBasis(q, a), InterpBasis(q, b));
}

// Local interpolation bound C mu^q q^nu 2^{1-2q} (2 + 2/pi log q) (dist(A,0) dist(B,0))^-s.
inline real local_interpolation_bound(const Smoothness& sm, int q, real dist_a, real dist_b)
{
    const real lebesgue = 2 + 2 / std::numbers::pi * std::log(q);
    return sm.C * std::pow(sm.mu, q) * std::pow(q, sm.nu) * std::ldexp(1.0, 1 - 2 * q) * lebesgue
         * std::pow(dist_a * dist_b, -sm.s);
}

//
// Ratio |y^q d^q/dy^q kappa(y, xi)| / (C q! mu^q q^nu (y xi)^-s), with the
// derivative taken by a central difference of order q. Values above 1 (plus
// numerical slack) indicate wrong smoothness constants. Costs q+1 kernel
// evaluations; meant for certification in tests.
//
inline real smoothness_ratio(const Kernel& kernel, real y, real xi, int q, bool in_xi = false)
{
    const real step = 1e-2 * (in_xi ? xi : y);
    real diff = 0;
    real binom = 1;
    for (int k = 0; k <= q; ++k)
    {
        const real shift = (0.5 * q - k) * step;
        const real v = in_xi ? kernel(y, xi + shift) : kernel(y + shift, xi);
        diff += (k % 2 == 0 ? 1 : -1) * binom * v;
        binom = binom * (q - k) / (k + 1);
    }
    const real deriv = diff / std::pow(step, q);
    const auto& sm = kernel.smoothness();
    const real bound = sm.C * std::tgamma(q + 1.0) * std::pow(sm.mu, q) * std::pow(q, sm.nu)
                     * std::pow(y * xi, -sm.s);
    return std::abs(std::pow(in_xi ? xi : y, q) * deriv) / bound;
}

} // namespace fflt
