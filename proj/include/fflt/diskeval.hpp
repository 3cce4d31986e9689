#pragma once
//
// Evaluation of generalized polynomials
//
//   f(z) = sum_k fhat_k z^{xi_k},   |z| <= 1, xi_k >= 1,
//
// and of the adjoint sums g(xi) = sum_j ghat_j z_j^xi. Nodes are split into
// polar form z = e^{-y} e^{2 pi i x}, so that z^xi is the Hadamard product of
// a Laplace factor e^{-y xi} and a Fourier factor e^{2 pi i x xi}. The
// Laplace factor is replaced by its dyadic low-rank decomposition and every
// block row is reduced to q products with the Fourier matrix:
//
//   (A o L^Y K (L^Omega)^T) fhat = (L^Y o A diag(fhat) L^Omega K^T) 1.
//
// Nodes with |z| < eps evaluate to zero.
//

#include <fflt/fourier.hpp>
#include <fflt/interp.hpp>
#include <fflt/kernels.hpp>
#include <fflt/laplace.hpp>
#include <fflt/partition.hpp>
#include <fflt/random.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace fflt {

// Tolerance for nodes rounded just outside the unit circle.
inline constexpr real unit_disk_tolerance = 1e-12;

struct PolarSplit
{
    std::vector<std::size_t> zero_set; // |z| < eps
    std::vector<std::size_t> retained; // caller indices of the remaining nodes
    std::vector<real>        y;        // -log|z|, per retained node
    std::vector<real>        x;        // arg(z) / (2 pi) in [0, 1), per retained node
};

// x in [0, 1) with z = |z| e^{2 pi i x}
inline real normalized_argument(complex z)
{
    real x = std::arg(z) / (2 * std::numbers::pi);
    if (x < 0)
        x += 1;
    if (x >= 1)
        x = std::nextafter(1.0, 0.0);
    return x;
}

inline PolarSplit polar_split(std::span<const complex> nodes, real epsilon)
{
    detail::check_epsilon(epsilon);
    PolarSplit split;
    for (std::size_t j = 0; j < nodes.size(); ++j)
    {
        const real r = std::abs(nodes[j]);
        if (!std::isfinite(r) || r > 1 + unit_disk_tolerance)
            throw std::domain_error("node outside the closed unit disk");
        if (r < epsilon)
        {
            split.zero_set.push_back(j);
            continue;
        }
        split.retained.push_back(j);
        split.y.push_back(std::max<real>(0, -std::log(r)));
        split.x.push_back(normalized_argument(nodes[j]));
    }
    return split;
}

struct DiskOptions
{
    // Replaces the accuracy-driven interpolation order.
    std::optional<int> order;
    // Window cutoff of the nfft backend; see disk_nfft_cutoff.
    std::optional<int> nfft_cutoff;
};

// ceil(q / 3), raised where needed so the Fourier factor stays within eps / 3.
inline int disk_nfft_cutoff(int q, real epsilon)
{
    return std::max((q + 2) / 3, nfft_cutoff_for_accuracy(epsilon / 3));
}

class DiskPlan
{
public:
    real                   epsilon() const noexcept { return part_.epsilon; }
    const DyadicPartition& partition() const noexcept { return part_; }
    int                    order() const noexcept { return part_.q; }
    int                    levels() const noexcept { return part_.M; }
    std::size_t            node_count() const noexcept { return n_nodes_; }
    std::size_t            term_count() const noexcept { return xi_.size(); }
    const FourierBackend&  fourier() const noexcept { return fourier_; }
    bool                   integer_exponents() const noexcept { return integer_; }

    std::span<const std::size_t> zero_set() const noexcept { return zero_set_; }

    // Caller indices of the nodes in spatial band m (X_m).
    std::vector<std::size_t> band_nodes(int m) const
    {
        const IndexRange r = y_ranges_.at(m);
        std::vector<std::size_t> out;
        for (std::size_t i = r.begin; i < r.end; ++i)
            out.push_back(node_perm_[i]);
        return out;
    }

    // Retained nodes in descending y order.
    std::span<const real> sorted_y() const noexcept { return y_; }
    std::span<const real> sorted_x() const noexcept { return x_; }

    std::vector<complex> apply(std::span<const complex> fhat) const
    {
        if (fhat.size() != term_count())
            throw std::invalid_argument("coefficient vector length does not match the exponents");
        const int M = part_.M;
        const auto q = static_cast<std::size_t>(part_.q);

        ComplexMatrix coeff(term_count(), 1);
        for (std::size_t k = 0; k < term_count(); ++k)
            coeff(k, 0) = fhat[xi_perm_[k]];

        std::vector<complex> out(y_.size());

        // |z| close to one: Laplace factor taken as one
        if (!y_ranges_[M].empty())
        {
            const auto res = fourier_.apply_block(range_indices(y_ranges_[M]), all_terms_, coeff);
            for (std::size_t a = 0; a < res.rows(); ++a)
                out[y_ranges_[M].begin + a] = res(a, 0);
        }

        // Fhat^l = diag(fhat^l) L^l
        std::vector<ComplexMatrix> fhat_l(M);
        for (int l = 1; l < M; ++l)
        {
            const IndexRange r = xi_ranges_[l];
            if (r.empty())
                continue;
            fhat_l[l] = ComplexMatrix(r.size(), q);
            for (std::size_t t = 0; t < r.size(); ++t)
                for (std::size_t s = 0; s < q; ++s)
                    fhat_l[l](t, s) = coeff(r.begin + t, 0) * l_xi_[l](t, s);
        }

        for (int m = 1; m < M; ++m)
        {
            const IndexRange xr = y_ranges_[m];
            if (xr.empty())
                continue;
            const auto rows = range_indices(xr);

            // saturated frequencies l > L_m
            const IndexRange tail = frequency_span(part_.last_far(m) + 1, M);
            if (!tail.empty())
            {
                ComplexMatrix rhs(tail.size(), 1);
                for (std::size_t t = 0; t < tail.size(); ++t)
                    rhs(t, 0) = coeff(tail.begin + t, 0);
                const auto res = fourier_.apply_block(rows, range_indices(tail), rhs);
                for (std::size_t a = 0; a < res.rows(); ++a)
                    out[xr.begin + a] += res(a, 0);
            }

            // interpolated frequencies l_m <= l <= L_m
            const int lo = part_.first_far(m);
            const int hi = part_.last_far(m);
            if (lo > hi)
                continue;
            const IndexRange far = frequency_span(lo, hi);
            if (far.empty())
                continue;
            ComplexMatrix stacked(far.size(), q);
            for (int l = lo; l <= hi; ++l)
            {
                const IndexRange r = xi_ranges_[l];
                if (r.empty())
                    continue;
                const RealMatrix& k = block(m, l);
                for (std::size_t t = 0; t < r.size(); ++t)
                {
                    auto dst = stacked.row(r.begin - far.begin + t);
                    auto src = fhat_l[l].row(t);
                    // (Fhat^l K^T)(t, s) = sum_r Fhat^l(t, r) K(s, r)
                    for (std::size_t s = 0; s < q; ++s)
                    {
                        complex acc{};
                        auto ks = k.row(s);
                        for (std::size_t rr = 0; rr < q; ++rr)
                            acc += src[rr] * ks[rr];
                        dst[s] = acc;
                    }
                }
            }
            const ComplexMatrix f = fourier_.apply_block(rows, range_indices(far), stacked);
            const RealMatrix& ly = l_y_[m];
            for (std::size_t a = 0; a < xr.size(); ++a)
            {
                complex acc{};
                for (std::size_t s = 0; s < q; ++s)
                    acc += ly(a, s) * f(a, s);
                out[xr.begin + a] += acc;
            }
        }

        std::vector<complex> result(n_nodes_);
        for (std::size_t i = 0; i < y_.size(); ++i)
            result[node_perm_[i]] = out[i];
        return result;
    }

    // Conjugate transpose of the factored approximant applied to ghat.
    std::vector<complex> apply_adjoint(std::span<const complex> ghat) const
    {
        if (ghat.size() != node_count())
            throw std::invalid_argument("vector length does not match the node count");
        const int M = part_.M;
        const auto q = static_cast<std::size_t>(part_.q);

        std::vector<complex> in(y_.size());
        for (std::size_t i = 0; i < y_.size(); ++i)
            in[i] = ghat[node_perm_[i]];

        std::vector<complex> out(term_count());

        if (!y_ranges_[M].empty())
        {
            const IndexRange xr = y_ranges_[M];
            ComplexMatrix rhs(xr.size(), 1);
            for (std::size_t a = 0; a < xr.size(); ++a)
                rhs(a, 0) = in[xr.begin + a];
            const auto res = fourier_.apply_adjoint_block(range_indices(xr), all_terms_, rhs);
            for (std::size_t k = 0; k < term_count(); ++k)
                out[k] += res(k, 0);
        }

        for (int m = 1; m < M; ++m)
        {
            const IndexRange xr = y_ranges_[m];
            if (xr.empty())
                continue;
            const auto rows = range_indices(xr);

            const IndexRange tail = frequency_span(part_.last_far(m) + 1, M);
            if (!tail.empty())
            {
                ComplexMatrix rhs(xr.size(), 1);
                for (std::size_t a = 0; a < xr.size(); ++a)
                    rhs(a, 0) = in[xr.begin + a];
                const auto res = fourier_.apply_adjoint_block(rows, range_indices(tail), rhs);
                for (std::size_t t = 0; t < tail.size(); ++t)
                    out[tail.begin + t] += res(t, 0);
            }

            const int lo = part_.first_far(m);
            const int hi = part_.last_far(m);
            if (lo > hi)
                continue;
            const IndexRange far = frequency_span(lo, hi);
            if (far.empty())
                continue;

            // G = diag(ghat^{X_m}) L^{Y_m}
            ComplexMatrix g(xr.size(), q);
            for (std::size_t a = 0; a < xr.size(); ++a)
                for (std::size_t s = 0; s < q; ++s)
                    g(a, s) = in[xr.begin + a] * l_y_[m](a, s);
            const ComplexMatrix p = fourier_.apply_adjoint_block(rows, range_indices(far), g);

            for (int l = lo; l <= hi; ++l)
            {
                const IndexRange r = xi_ranges_[l];
                if (r.empty())
                    continue;
                const RealMatrix& k = block(m, l);
                const RealMatrix& lx = l_xi_[l];
                for (std::size_t t = 0; t < r.size(); ++t)
                {
                    auto prow = p.row(r.begin - far.begin + t);
                    // sum_s L^l(t, s) (P K)(t, s)
                    complex acc{};
                    for (std::size_t s = 0; s < q; ++s)
                    {
                        complex pk{};
                        for (std::size_t rr = 0; rr < q; ++rr)
                            pk += prow[rr] * k(rr, s);
                        acc += lx(t, s) * pk;
                    }
                    out[r.begin + t] += acc;
                }
            }
        }

        std::vector<complex> result(term_count());
        for (std::size_t k = 0; k < term_count(); ++k)
            result[xi_perm_[k]] = out[k];
        return result;
    }

private:
    friend DiskPlan make_disk_plan(real, std::span<const complex>, std::span<const real>, FourierKind,
                                   const DiskOptions&);

    DiskPlan() = default;

    std::vector<std::size_t> range_indices(IndexRange r) const
    {
        std::vector<std::size_t> idx(r.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            idx[i] = r.begin + i;
        return idx;
    }

    // sorted exponent positions of the bands lo..hi
    IndexRange frequency_span(int lo, int hi) const
    {
        if (lo > hi)
            return {};
        return {xi_ranges_[lo].begin, xi_ranges_[hi].end};
    }

    const RealMatrix& block(int m, int l) const
    {
        return blocks_[static_cast<std::size_t>(m - 1) * (part_.M - 1) + (l - 1)];
    }

    DyadicPartition          part_;
    std::size_t              n_nodes_ = 0;
    bool                     integer_ = true;
    std::vector<std::size_t> zero_set_;
    std::vector<std::size_t> node_perm_; // sorted retained position -> caller index
    std::vector<real>        y_;
    std::vector<real>        x_;
    std::vector<real>        xi_;
    std::vector<std::size_t> xi_perm_;
    std::vector<std::size_t> all_terms_;
    std::vector<IndexRange>  y_ranges_;
    std::vector<IndexRange>  xi_ranges_;
    std::vector<RealMatrix>  l_y_;
    std::vector<RealMatrix>  l_xi_;
    std::vector<RealMatrix>  blocks_;
    FourierBackend           fourier_;
};

inline DiskPlan make_disk_plan(real epsilon, std::span<const complex> nodes, std::span<const real> exponents,
                               FourierKind backend, const DiskOptions& options = {})
{
    detail::check_epsilon(epsilon);
    if (exponents.empty())
        throw std::invalid_argument("at least one exponent is required");
    bool integer = true;
    for (real e : exponents)
    {
        if (!std::isfinite(e) || e < 1)
            throw std::invalid_argument("exponents must be finite and at least 1");
        integer = integer && e == std::round(e);
    }
    if (!integer)
    {
        if (backend == FourierKind::nfft)
            throw std::invalid_argument("the nfft backend requires integer exponents");
        for (const complex& z : nodes)
            if (z.imag() == 0 && z.real() < 0)
                throw std::domain_error("noninteger exponents exclude nodes on the negative real axis");
    }

    DiskPlan plan;
    plan.n_nodes_ = nodes.size();
    plan.integer_ = integer;

    PolarSplit split = polar_split(nodes, epsilon);
    plan.zero_set_ = std::move(split.zero_set);

    const real y1 = std::log(1 / epsilon);
    const real xi1 = *std::max_element(exponents.begin(), exponents.end());
    const std::size_t n = std::max(nodes.size(), exponents.size());
    plan.part_ = make_partition(epsilon, y1, xi1, PartitionMode::disk, n, options.order);
    const DyadicPartition& part = plan.part_;
    const int M = part.M;

    // retained nodes in descending y
    for (real& y : split.y)
        y = std::min(y, y1);
    const auto yperm = detail::descending_order(split.y);
    plan.y_.resize(yperm.size());
    plan.x_.resize(yperm.size());
    plan.node_perm_.resize(yperm.size());
    for (std::size_t i = 0; i < yperm.size(); ++i)
    {
        plan.y_[i] = split.y[yperm[i]];
        plan.x_[i] = split.x[yperm[i]];
        plan.node_perm_[i] = split.retained[yperm[i]];
    }

    plan.xi_perm_ = detail::descending_order(exponents);
    plan.xi_.resize(exponents.size());
    for (std::size_t k = 0; k < exponents.size(); ++k)
        plan.xi_[k] = exponents[plan.xi_perm_[k]];
    plan.all_terms_.resize(exponents.size());
    for (std::size_t k = 0; k < exponents.size(); ++k)
        plan.all_terms_[k] = k;

    plan.y_ranges_ = detail::band_ranges(plan.y_, y1, M);
    plan.xi_ranges_ = detail::band_ranges(plan.xi_, xi1, M);

    const Kernel kernel = exp_kernel();
    std::vector<std::optional<InterpBasis>> by(M), bx(M);
    plan.l_y_.resize(M);
    plan.l_xi_.resize(M);
    for (int m = 1; m < M; ++m)
    {
        Interval band = part.y_band(m);
        band.closure = Closure::closed;
        by[m].emplace(part.q, band);
        const IndexRange yr = plan.y_ranges_[m];
        if (!yr.empty())
            plan.l_y_[m] = lagrange_matrix(*by[m], std::span<const real>(plan.y_).subspan(yr.begin, yr.size()));

        band = part.xi_band(m);
        band.closure = Closure::closed;
        bx[m].emplace(part.q, band);
        const IndexRange xr = plan.xi_ranges_[m];
        if (!xr.empty())
            plan.l_xi_[m] = lagrange_matrix(*bx[m], std::span<const real>(plan.xi_).subspan(xr.begin, xr.size()));
    }
    plan.blocks_.resize(static_cast<std::size_t>(M - 1) * (M - 1));
    for (int m = 1; m < M; ++m)
    {
        if (plan.y_ranges_[m].empty())
            continue;
        for (int l = part.first_far(m); l <= part.last_far(m); ++l)
            if (!plan.xi_ranges_[l].empty())
                plan.blocks_[static_cast<std::size_t>(m - 1) * (M - 1) + (l - 1)] = kernel_block(kernel, *by[m], *bx[l]);
    }

    if (backend == FourierKind::direct)
        plan.fourier_ = make_direct_backend(plan.x_, plan.xi_);
    else
        plan.fourier_ = make_nfft_backend(plan.x_, plan.xi_,
                                          options.nfft_cutoff ? *options.nfft_cutoff : disk_nfft_cutoff(part.q, epsilon));
    return plan;
}

// z^xi on the branch arg(z) in [0, 2 pi)
inline complex branch_power(complex z, real xi)
{
    const real r = std::abs(z);
    if (r == 0)
        return 0;
    real theta = std::arg(z);
    if (theta < 0)
        theta += 2 * std::numbers::pi;
    const real turns = xi * theta / (2 * std::numbers::pi);
    return std::pow(r, xi) * detail::unit_phase(turns);
}

// Exact O(N N') evaluation of sum_k fhat_k z_j^{xi_k}.
inline std::vector<complex> naive_disk_apply(std::span<const complex> nodes, std::span<const real> exponents,
                                             std::span<const complex> fhat)
{
    if (fhat.size() != exponents.size())
        throw std::invalid_argument("coefficient vector length does not match the exponents");
    std::vector<complex> f(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j)
    {
        complex acc{};
        for (std::size_t k = 0; k < exponents.size(); ++k)
            acc += fhat[k] * branch_power(nodes[j], exponents[k]);
        f[j] = acc;
    }
    return f;
}

// Exact O(N N') evaluation of sum_j ghat_j conj(z_j^{xi_k}).
inline std::vector<complex> naive_disk_apply_adjoint(std::span<const complex> nodes, std::span<const real> exponents,
                                                     std::span<const complex> ghat)
{
    if (ghat.size() != nodes.size())
        throw std::invalid_argument("vector length does not match the node count");
    std::vector<complex> g(exponents.size());
    for (std::size_t k = 0; k < exponents.size(); ++k)
    {
        complex acc{};
        for (std::size_t j = 0; j < nodes.size(); ++j)
            acc += ghat[j] * std::conj(branch_power(nodes[j], exponents[k]));
        g[k] = acc;
    }
    return g;
}

//
// Dense check of (A o L^Y K (L^Omega)^T) fhat = (L^Y o A diag(fhat) L^Omega K^T) 1
// on random factors; returns the relative max deviation between both sides.
//
inline real hadamard_block_identity_deviation(int q, std::size_t n_y, std::size_t n_xi, std::uint64_t seed,
                                              bool zero_coefficients = false)
{
    Random rng(seed);
    RealMatrix ly(n_y, q), lo(n_xi, q), k(q, q);
    for (real& v : ly.values())
        v = rng.uniform(-1, 1);
    for (real& v : lo.values())
        v = rng.uniform(-1, 1);
    for (real& v : k.values())
        v = rng.uniform(-1, 1);
    ComplexMatrix a(n_y, n_xi);
    for (complex& v : a.values())
        v = detail::unit_phase(rng.uniform());
    std::vector<complex> fhat(n_xi);
    for (complex& v : fhat)
        v = zero_coefficients ? complex{} : rng.unit_box();

    // left: dense low-rank block, Hadamard product, then mat-vec
    std::vector<complex> lhs(n_y);
    for (std::size_t i = 0; i < n_y; ++i)
        for (std::size_t j = 0; j < n_xi; ++j)
        {
            real kij = 0;
            for (int s = 0; s < q; ++s)
                for (int r = 0; r < q; ++r)
                    kij += ly(i, s) * k(s, r) * lo(j, r);
            lhs[i] += a(i, j) * kij * fhat[j];
        }

    // right: A diag(fhat) L^Omega K^T, Hadamard with L^Y, row sums
    ComplexMatrix t(n_xi, q);
    for (std::size_t j = 0; j < n_xi; ++j)
        for (int s = 0; s < q; ++s)
        {
            real acc = 0;
            for (int r = 0; r < q; ++r)
                acc += lo(j, r) * k(s, r);
            t(j, s) = fhat[j] * acc;
        }
    std::vector<complex> rhs(n_y);
    for (std::size_t i = 0; i < n_y; ++i)
        for (int s = 0; s < q; ++s)
        {
            complex f{};
            for (std::size_t j = 0; j < n_xi; ++j)
                f += a(i, j) * t(j, s);
            rhs[i] += ly(i, s) * f;
        }

    real scale = 0, diff = 0;
    for (std::size_t i = 0; i < n_y; ++i)
    {
        scale = max_nan(scale, std::abs(lhs[i]));
        diff = max_nan(diff, std::abs(lhs[i] - rhs[i]));
    }
    return scale == 0 ? diff : diff / scale;
}

inline bool hadamard_block_identity_check(int q, std::size_t n_y, std::size_t n_xi, std::uint64_t seed)
{
    if (q < 1 || q > 8 || n_y > 64 || n_xi > 64)
        throw std::invalid_argument("hadamard self-test is limited to q <= 8 and blocks up to 64 x 64");
    return hadamard_block_identity_deviation(q, n_y, n_xi, seed) <= 1e-12;
}

} // namespace fflt
