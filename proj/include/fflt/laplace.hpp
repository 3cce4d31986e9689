#pragma once
//
// Fast discrete Laplace transform
//
//   f(y_i) = sum_j fhat_j kappa(y_i, xi_j)
//
// for the exponential kernel (zero / interpolation / one approximation per
// block) and for general asymptotically smooth kernels (every far block
// interpolated, near fields summed directly). All Lagrange and kernel blocks
// are built by make_plan; apply and apply_adjoint only run the factored
// product.
//

#include <fflt/interp.hpp>
#include <fflt/kernels.hpp>
#include <fflt/matrix.hpp>
#include <fflt/partition.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace fflt {

enum class LaplaceVariant
{
    exp,
    general
};

struct IndexRange
{
    std::size_t begin = 0;
    std::size_t end   = 0;

    std::size_t size() const noexcept { return end - begin; }
    bool        empty() const noexcept { return begin == end; }
};

// Deterministic count of multiply-add operations performed by an apply call.
struct FlopCounter
{
    std::uint64_t count = 0;

    void add(std::uint64_t n) noexcept { count += n; }
};

struct PlanOptions
{
    // Replaces the accuracy-driven interpolation order.
    std::optional<int> order;
};

namespace detail {

// Indices sorting values into descending order (stable for ties).
inline std::vector<std::size_t> descending_order(std::span<const real> values)
{
    std::vector<std::size_t> perm(values.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return perm;
}

// Contiguous ranges of descending values per band 1..M (index 0 unused).
inline std::vector<IndexRange> band_ranges(std::span<const real> sorted_desc, real top, int M)
{
    std::vector<IndexRange> ranges(M + 1);
    std::size_t i = 0;
    for (int m = 1; m <= M; ++m)
    {
        ranges[m].begin = i;
        while (i < sorted_desc.size() && band_index(sorted_desc[i], top, M) == m)
            ++i;
        ranges[m].end = i;
    }
    if (i != sorted_desc.size())
        throw std::logic_error("band assignment is not monotone");
    return ranges;
}

inline void check_nodes(std::span<const real> nodes, const char* what)
{
    if (nodes.empty())
        throw std::invalid_argument(std::string(what) + " nodes must not be empty");
    for (real v : nodes)
        if (!(v > 0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(what) + " nodes must be positive and finite");
}

// Smallest q with C_tilde c^q * scale <= eps.
inline int order_for_local_bound(const LocalErrorConstants& lc, real log_scale, real epsilon)
{
    const real log_c = std::log(lc.c);
    for (int q = 2; q < 1000; ++q)
        if (std::log(lc.C_tilde) + q * log_c + log_scale <= std::log(epsilon))
            return q;
    throw std::invalid_argument("kernel constants do not yield a finite interpolation order");
}

// Scratch of 3 q reals: fixed size on the stack when the order is static.
template <int Q>
struct BandScratch
{
    explicit BandScratch(std::size_t) {}
    real* data() { return buf.data(); }
    std::array<real, 3 * Q> buf{};
};

template <>
struct BandScratch<0>
{
    explicit BandScratch(std::size_t q) : buf(3 * q) {}
    real* data() { return buf.data(); }
    std::vector<real> buf;
};

} // namespace detail

class LaplacePlan
{
public:
    const DyadicPartition& partition() const noexcept { return part_; }
    const Kernel&          kernel() const noexcept { return kernel_; }
    LaplaceVariant         variant() const noexcept { return variant_; }
    int                    order() const noexcept { return part_.q; }
    int                    levels() const noexcept { return part_.M; }
    std::size_t            rows() const noexcept { return y_.size(); }
    std::size_t            cols() const noexcept { return xi_.size(); }

    // Nodes in descending order and the caller index of each sorted position.
    std::span<const real>        sorted_y() const noexcept { return y_; }
    std::span<const real>        sorted_xi() const noexcept { return xi_; }
    std::span<const std::size_t> y_permutation() const noexcept { return perm_y_; }
    std::span<const std::size_t> xi_permutation() const noexcept { return perm_xi_; }

    IndexRange y_band(int m) const { return y_ranges_.at(m); }
    IndexRange xi_band(int l) const { return xi_ranges_.at(l); }

    // Lagrange matrices of the far bands, built on request; apply computes rows on the fly.
    RealMatrix lagrange_y(int m) const { return lagrange_of(basis_y_.at(m), y_, y_ranges_.at(m)); }
    RealMatrix lagrange_xi(int l) const { return lagrange_of(basis_xi_.at(l), xi_, xi_ranges_.at(l)); }

    // Kernel block for (m, l), or nullptr where the plan stores none.
    const RealMatrix* block(int m, int l) const
    {
        const auto& b = blocks_.at(block_slot(m, l));
        return b.empty() ? nullptr : &b;
    }

    std::size_t block_count() const
    {
        return static_cast<std::size_t>(
            std::count_if(blocks_.begin(), blocks_.end(), [](const RealMatrix& b) { return !b.empty(); }));
    }

    std::vector<complex> apply(std::span<const complex> fhat, FlopCounter* flops = nullptr) const
    {
        if (fhat.size() != cols())
            throw std::invalid_argument("coefficient vector length does not match the frequency nodes");
        return in_sorted_order(fhat, perm_xi_, xi_sorted_, perm_y_, y_sorted_, rows(),
                               [&](std::span<const complex> in, std::span<complex> out) {
                                   if (variant_ == LaplaceVariant::exp)
                                       apply_exp(in, out, flops);
                                   else
                                       apply_general(in, out, flops);
                               });
    }

    // Transposed factored product (the kernel and all factors are real).
    std::vector<complex> apply_adjoint(std::span<const complex> g, FlopCounter* flops = nullptr) const
    {
        if (g.size() != rows())
            throw std::invalid_argument("vector length does not match the spatial nodes");
        return in_sorted_order(g, perm_y_, y_sorted_, perm_xi_, xi_sorted_, cols(),
                               [&](std::span<const complex> in, std::span<complex> out) {
                                   if (variant_ == LaplaceVariant::exp)
                                       adjoint_exp(in, out, flops);
                                   else
                                       adjoint_general(in, out, flops);
                               });
    }

private:
    friend LaplacePlan make_plan(real, const Kernel&, std::span<const real>, std::span<const real>,
                                 LaplaceVariant, const PlanOptions&);

    LaplacePlan(DyadicPartition part, Kernel kernel, LaplaceVariant variant)
        : part_(part), kernel_(std::move(kernel)), variant_(variant)
    {}

    std::size_t block_slot(int m, int l) const
    {
        if (m < 1 || m >= part_.M || l < 1 || l >= part_.M)
            throw std::out_of_range("block index outside 1..M-1");
        return static_cast<std::size_t>(m - 1) * (part_.M - 1) + (l - 1);
    }

    // Runs body on descending-order data; copies are skipped when the caller
    // order already is descending.
    template <typename Body>
    static std::vector<complex> in_sorted_order(std::span<const complex> x, const std::vector<std::size_t>& in_perm,
                                                bool in_sorted, const std::vector<std::size_t>& out_perm,
                                                bool out_sorted, std::size_t out_size, Body&& body)
    {
        std::vector<complex> gathered;
        if (!in_sorted)
        {
            gathered.resize(x.size());
            for (std::size_t j = 0; j < x.size(); ++j)
                gathered[j] = x[in_perm[j]];
            x = gathered;
        }
        std::vector<complex> out(out_size);
        body(x, std::span<complex>(out));
        if (out_sorted)
            return out;
        std::vector<complex> result(out_size);
        for (std::size_t i = 0; i < out_size; ++i)
            result[out_perm[i]] = out[i];
        return result;
    }

    template <typename T>
    static std::span<T> slice(std::span<T> v, IndexRange r)
    {
        return v.subspan(r.begin, r.size());
    }
    template <typename T>
    static std::span<T> slice(std::vector<T>& v, IndexRange r)
    {
        return {v.data() + r.begin, r.size()};
    }
    template <typename T>
    static std::span<const T> slice(const std::vector<T>& v, IndexRange r)
    {
        return {v.data() + r.begin, r.size()};
    }

    static RealMatrix lagrange_of(const std::optional<InterpBasis>& basis, const std::vector<real>& nodes,
                                  IndexRange range)
    {
        if (!basis || range.empty())
            return {};
        return lagrange_matrix(*basis, slice(nodes, range));
    }

    // out += L^T in, with L the Lagrange matrix of nodes
    static void project_band(const InterpBasis& basis, bool checked, std::span<const real> nodes,
                             std::span<const complex> in, std::span<complex> out)
    {
        with_static_order(basis.order(), [&](auto order) {
            constexpr int Q = decltype(order)::value;
            if (checked)
                project_band_impl<Q, true>(basis, nodes, in, out);
            else
                project_band_impl<Q, false>(basis, nodes, in, out);
        });
    }

    template <int Q, bool Checked>
    static void project_band_impl(const InterpBasis& basis, std::span<const real> nodes, std::span<const complex> in,
                                  std::span<complex> out)
    {
        const std::size_t q = Q > 0 ? Q : static_cast<std::size_t>(basis.order());
        detail::BandScratch<Q> scratch(q);
        real* __restrict row = scratch.data();
        real* __restrict re = row + q;
        real* __restrict im = re + q;
        for (std::size_t i = 0; i < nodes.size(); ++i)
        {
            const complex x = in[i] / basis.template barycentric_terms<Q, Checked>(nodes[i], row);
            for (std::size_t r = 0; r < q; ++r)
            {
                re[r] += row[r] * x.real();
                im[r] += row[r] * x.imag();
            }
        }
        for (std::size_t r = 0; r < q; ++r)
            out[r] += complex(re[r], im[r]);
    }

    // out += L h, with L the Lagrange matrix of nodes
    static void expand_band(const InterpBasis& basis, bool checked, std::span<const real> nodes,
                            std::span<const complex> h, std::span<complex> out)
    {
        with_static_order(basis.order(), [&](auto order) {
            constexpr int Q = decltype(order)::value;
            if (checked)
                expand_band_impl<Q, true>(basis, nodes, h, out);
            else
                expand_band_impl<Q, false>(basis, nodes, h, out);
        });
    }

    template <int Q, bool Checked>
    static void expand_band_impl(const InterpBasis& basis, std::span<const real> nodes, std::span<const complex> h,
                                 std::span<complex> out)
    {
        const std::size_t q = Q > 0 ? Q : static_cast<std::size_t>(basis.order());
        detail::BandScratch<Q> scratch(q);
        real* __restrict row = scratch.data();
        real* __restrict re = row + q;
        real* __restrict im = re + q;
        for (std::size_t r = 0; r < q; ++r)
        {
            re[r] = h[r].real();
            im[r] = h[r].imag();
        }
        for (std::size_t i = 0; i < nodes.size(); ++i)
        {
            const real denom = basis.template barycentric_terms<Q, Checked>(nodes[i], row);
            real acc_re = 0, acc_im = 0;
            for (std::size_t r = 0; r < q; ++r)
            {
                acc_re += row[r] * re[r];
                acc_im += row[r] * im[r];
            }
            out[i] += complex(acc_re, acc_im) / denom;
        }
    }

    static void count(FlopCounter* flops, std::uint64_t n)
    {
        if (flops)
            flops->add(n);
    }

    // v^l = (L^l)^T fhat^l for l < M
    std::vector<std::vector<complex>> project_frequencies(std::span<const complex> in, FlopCounter* flops) const
    {
        const int M = part_.M;
        const auto q = static_cast<std::size_t>(part_.q);
        std::vector<std::vector<complex>> v(M);
        for (int l = 1; l < M; ++l)
        {
            if (xi_ranges_[l].empty())
                continue;
            v[l].assign(q, complex{});
            project_band(*basis_xi_[l], xi_checked_[l], slice(xi_, xi_ranges_[l]), slice(in, xi_ranges_[l]), v[l]);
            count(flops, q * xi_ranges_[l].size());
        }
        return v;
    }

    void interpolate_row_band(int m, std::span<const complex> h, complex shift, std::span<complex> out,
                              FlopCounter* flops) const
    {
        auto rows = slice(out, y_ranges_[m]);
        std::fill(rows.begin(), rows.end(), shift);
        expand_band(*basis_y_[m], y_checked_[m], slice(y_, y_ranges_[m]), h, rows);
        count(flops, static_cast<std::uint64_t>(part_.q + 1) * rows.size());
    }

    void apply_exp(std::span<const complex> in, std::span<complex> out, FlopCounter* flops) const
    {
        const int M = part_.M;
        const auto q = static_cast<std::size_t>(part_.q);

        // g_l = sum of fhat over Omega_l, ..., Omega_M
        std::vector<complex> g(M + 2);
        for (int l = M; l >= 1; --l)
        {
            complex s{};
            for (const complex& c : slice(in, xi_ranges_[l]))
                s += c;
            g[l] = g[l + 1] + s;
        }
        count(flops, cols());

        for (complex& o : slice(out, y_ranges_[M]))
            o = g[1];

        const auto v = project_frequencies(in, flops);

        std::vector<complex> h(q);
        for (int m = 1; m < M; ++m)
        {
            if (y_ranges_[m].empty())
                continue;
            std::fill(h.begin(), h.end(), complex{});
            for (int l = part_.first_far(m); l <= part_.last_far(m); ++l)
            {
                const RealMatrix* k = block(m, l);
                if (!k)
                    continue;
                gemv_add(*k, std::span<const complex>(v[l]), std::span<complex>(h));
                count(flops, q * q);
            }
            interpolate_row_band(m, h, g[part_.last_far(m) + 1], out, flops);
        }
    }

    void apply_general(std::span<const complex> in, std::span<complex> out, FlopCounter* flops) const
    {
        const int M = part_.M;
        const auto q = static_cast<std::size_t>(part_.q);

        // spatial near field: exact sums
        for (std::size_t i = y_ranges_[M].begin; i < y_ranges_[M].end; ++i)
        {
            complex acc{};
            for (std::size_t j = 0; j < cols(); ++j)
                acc += in[j] * kernel_(y_[i], xi_[j]);
            out[i] = acc;
        }
        count(flops, y_ranges_[M].size() * cols());

        const auto v = project_frequencies(in, flops);
        const IndexRange near_xi = xi_ranges_[M];

        std::vector<complex> h(q);
        for (int m = 1; m < M; ++m)
        {
            if (y_ranges_[m].empty())
                continue;
            std::fill(h.begin(), h.end(), complex{});
            for (int l = 1; l < M; ++l)
            {
                const RealMatrix* k = block(m, l);
                if (!k)
                    continue;
                gemv_add(*k, std::span<const complex>(v[l]), std::span<complex>(h));
                count(flops, q * q);
            }
            interpolate_row_band(m, h, complex{}, out, flops);

            // frequency near field: exact sums
            for (std::size_t i = y_ranges_[m].begin; i < y_ranges_[m].end; ++i)
                for (std::size_t j = near_xi.begin; j < near_xi.end; ++j)
                    out[i] += in[j] * kernel_(y_[i], xi_[j]);
            count(flops, y_ranges_[m].size() * near_xi.size());
        }
    }

    // w^m = (L^{Y_m})^T g^{Y_m}
    std::vector<std::vector<complex>> project_rows(std::span<const complex> in, FlopCounter* flops) const
    {
        const int M = part_.M;
        const auto q = static_cast<std::size_t>(part_.q);
        std::vector<std::vector<complex>> w(M);
        for (int m = 1; m < M; ++m)
        {
            if (y_ranges_[m].empty())
                continue;
            w[m].assign(q, complex{});
            project_band(*basis_y_[m], y_checked_[m], slice(y_, y_ranges_[m]), slice(in, y_ranges_[m]), w[m]);
            count(flops, q * y_ranges_[m].size());
        }
        return w;
    }

    void expand_frequency_band(int l, std::span<const complex> u, complex shift, std::span<complex> out,
                               FlopCounter* flops) const
    {
        auto cols = slice(out, xi_ranges_[l]);
        for (complex& c : cols)
            c += shift;
        expand_band(*basis_xi_[l], xi_checked_[l], slice(xi_, xi_ranges_[l]), u, cols);
        count(flops, static_cast<std::uint64_t>(part_.q + 1) * cols.size());
    }

    void adjoint_exp(std::span<const complex> in, std::span<complex> out, FlopCounter* flops) const
    {
        const int M = part_.M;
        const auto q = static_cast<std::size_t>(part_.q);

        // row sums per spatial band
        std::vector<complex> s(M + 2);
        for (int m = 1; m <= M; ++m)
            for (const complex& c : slice(in, y_ranges_[m]))
                s[m] += c;
        count(flops, rows());

        // frequency band l receives the saturated rows m > M - l, including Y_M
        std::vector<complex> tail(M + 2);
        for (int m = M; m >= 1; --m)
            tail[m] = tail[m + 1] + s[m];

        const auto w = project_rows(in, flops);

        std::vector<complex> u(q);
        for (int l = 1; l <= M; ++l)
        {
            const complex shift = tail[std::max(1, M - l + 1)];
            if (l == M)
            {
                for (complex& c : slice(out, xi_ranges_[M]))
                    c = shift;
                continue;
            }
            if (xi_ranges_[l].empty())
                continue;
            std::fill(u.begin(), u.end(), complex{});
            for (int m = 1; m < M; ++m)
            {
                if (l < part_.first_far(m) || l > part_.last_far(m))
                    continue;
                const RealMatrix* k = block(m, l);
                if (!k)
                    continue;
                gemv_t_add(*k, std::span<const complex>(w[m]), std::span<complex>(u));
                count(flops, q * q);
            }
            expand_frequency_band(l, u, shift, out, flops);
        }
    }

    void adjoint_general(std::span<const complex> in, std::span<complex> out, FlopCounter* flops) const
    {
        const int M = part_.M;
        const auto q = static_cast<std::size_t>(part_.q);
        const IndexRange near_y = y_ranges_[M];
        const IndexRange near_xi = xi_ranges_[M];

        // spatial near field rows are exact for every column
        for (std::size_t j = 0; j < cols(); ++j)
        {
            complex acc{};
            for (std::size_t i = near_y.begin; i < near_y.end; ++i)
                acc += in[i] * kernel_(y_[i], xi_[j]);
            out[j] = acc;
        }
        count(flops, near_y.size() * cols());

        // frequency near field columns are exact for the remaining rows
        for (std::size_t j = near_xi.begin; j < near_xi.end; ++j)
        {
            complex acc{};
            for (std::size_t i = 0; i < near_y.begin; ++i)
                acc += in[i] * kernel_(y_[i], xi_[j]);
            out[j] += acc;
        }
        count(flops, near_y.begin * near_xi.size());

        const auto w = project_rows(in, flops);

        std::vector<complex> u(q);
        for (int l = 1; l < M; ++l)
        {
            if (xi_ranges_[l].empty())
                continue;
            std::fill(u.begin(), u.end(), complex{});
            for (int m = 1; m < M; ++m)
            {
                const RealMatrix* k = block(m, l);
                if (!k)
                    continue;
                gemv_t_add(*k, std::span<const complex>(w[m]), std::span<complex>(u));
                count(flops, q * q);
            }
            expand_frequency_band(l, u, complex{}, out, flops);
        }
    }

    DyadicPartition          part_;
    Kernel                   kernel_;
    LaplaceVariant           variant_;
    std::vector<real>        y_;
    std::vector<real>        xi_;
    std::vector<std::size_t> perm_y_;
    std::vector<std::size_t> perm_xi_;
    bool                     y_sorted_  = false;
    bool                     xi_sorted_ = false;
    std::vector<IndexRange>  y_ranges_;
    std::vector<IndexRange>  xi_ranges_;
    std::vector<std::optional<InterpBasis>> basis_y_;
    std::vector<std::optional<InterpBasis>> basis_xi_;
    std::vector<char>                       y_checked_;  // band has a node on an interpolation node
    std::vector<char>                       xi_checked_;
    std::vector<RealMatrix>  blocks_;
};

//
// Builds the band bases and kernel blocks. Nodes may come in any order; results
// of apply / apply_adjoint are returned in caller order.
//
inline LaplacePlan make_plan(real epsilon, const Kernel& kernel, std::span<const real> y_nodes,
                             std::span<const real> xi_nodes, LaplaceVariant variant,
                             const PlanOptions& options = {})
{
    detail::check_epsilon(epsilon);
    detail::check_nodes(y_nodes, "spatial");
    detail::check_nodes(xi_nodes, "frequency");
    if (variant == LaplaceVariant::exp && kernel.kind() != KernelKind::exponential)
        throw std::invalid_argument("the exp variant requires the exponential kernel");

    const real y1 = *std::max_element(y_nodes.begin(), y_nodes.end());
    const real xi1 = *std::max_element(xi_nodes.begin(), xi_nodes.end());
    const std::size_t n = std::max(y_nodes.size(), xi_nodes.size());

    DyadicPartition part;
    if (variant == LaplaceVariant::exp)
    {
        part = make_partition(epsilon, y1, xi1, PartitionMode::exp, std::nullopt, options.order);
    }
    else
    {
        part = make_partition(epsilon, y1, xi1, PartitionMode::general, n, 2);
        if (options.order)
        {
            part.q = *options.order;
        }
        else
        {
            // C_tilde c^q (dist dist)^-s <= eps on every far block; the closed form
            // (2 y1 xi1)^s (n/eps)^{2s} and the exact smallest band product are both honoured
            const real s = kernel.smoothness().s;
            const real closed_form = s * std::log(2 * y1 * xi1) + 2 * s * std::log(n / epsilon);
            const real band_floor = -s * (std::log(y1 * xi1) - 2 * (part.M - 1) * std::log(2.0));
            part.q = detail::order_for_local_bound(kernel.local_error(), std::max(closed_form, band_floor), epsilon);
        }
    }

    LaplacePlan plan(part, kernel, variant);
    const int M = part.M;

    plan.perm_y_ = detail::descending_order(y_nodes);
    plan.perm_xi_ = detail::descending_order(xi_nodes);
    plan.y_.resize(y_nodes.size());
    plan.xi_.resize(xi_nodes.size());
    for (std::size_t i = 0; i < y_nodes.size(); ++i)
        plan.y_[i] = y_nodes[plan.perm_y_[i]];
    for (std::size_t j = 0; j < xi_nodes.size(); ++j)
        plan.xi_[j] = xi_nodes[plan.perm_xi_[j]];
    plan.y_sorted_ = std::is_sorted(plan.perm_y_.begin(), plan.perm_y_.end());
    plan.xi_sorted_ = std::is_sorted(plan.perm_xi_.begin(), plan.perm_xi_.end());

    plan.y_ranges_ = detail::band_ranges(plan.y_, y1, M);
    plan.xi_ranges_ = detail::band_ranges(plan.xi_, xi1, M);

    auto& by = plan.basis_y_;
    auto& bx = plan.basis_xi_;
    by.resize(M);
    bx.resize(M);
    for (int m = 1; m < M; ++m)
    {
        Interval band = part.y_band(m);
        band.closure = Closure::closed;
        by[m].emplace(part.q, band);
        band = part.xi_band(m);
        band.closure = Closure::closed;
        bx[m].emplace(part.q, band);
    }
    const auto any_collision = [](const InterpBasis& basis, std::span<const real> nodes) -> char {
        for (real v : nodes)
            if (basis.collides(v))
                return 1;
        return 0;
    };
    plan.y_checked_.assign(M, 0);
    plan.xi_checked_.assign(M, 0);
    for (int m = 1; m < M; ++m)
    {
        plan.y_checked_[m] = any_collision(*by[m], LaplacePlan::slice(plan.y_, plan.y_ranges_[m]));
        plan.xi_checked_[m] = any_collision(*bx[m], LaplacePlan::slice(plan.xi_, plan.xi_ranges_[m]));
    }

    plan.blocks_.resize(static_cast<std::size_t>(M - 1) * (M - 1));
    for (int m = 1; m < M; ++m)
    {
        if (plan.y_ranges_[m].empty())
            continue;
        for (int l = part.first_far(m); l <= part.last_far(m); ++l)
        {
            if (plan.xi_ranges_[l].empty())
                continue;
            plan.blocks_[plan.block_slot(m, l)] = kernel_block(kernel, *by[m], *bx[l]);
        }
    }
    return plan;
}

// Exact O(N N') summation.
template <typename KernelFn>
std::vector<complex> naive_apply(const KernelFn& kernel, std::span<const real> y_nodes,
                                 std::span<const real> xi_nodes, std::span<const complex> fhat)
{
    if (fhat.size() != xi_nodes.size())
        throw std::invalid_argument("coefficient vector length does not match the frequency nodes");
    std::vector<complex> f(y_nodes.size());
    for (std::size_t i = 0; i < y_nodes.size(); ++i)
    {
        complex acc{};
        for (std::size_t j = 0; j < xi_nodes.size(); ++j)
            acc += fhat[j] * kernel(y_nodes[i], xi_nodes[j]);
        f[i] = acc;
    }
    return f;
}

// Exact transposed summation sum_i g_i kappa(y_i, xi_j).
template <typename KernelFn>
std::vector<complex> naive_apply_adjoint(const KernelFn& kernel, std::span<const real> y_nodes,
                                         std::span<const real> xi_nodes, std::span<const complex> g)
{
    if (g.size() != y_nodes.size())
        throw std::invalid_argument("vector length does not match the spatial nodes");
    std::vector<complex> out(xi_nodes.size());
    for (std::size_t j = 0; j < xi_nodes.size(); ++j)
    {
        complex acc{};
        for (std::size_t i = 0; i < y_nodes.size(); ++i)
            acc += g[i] * kernel(y_nodes[i], xi_nodes[j]);
        out[j] = acc;
    }
    return out;
}

} // namespace fflt
