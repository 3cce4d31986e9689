#pragma once
//
// Nonequispaced Fourier matrix A = (e^{2 pi i xi_k x_j}) with x_j in [0, 1).
//
// Two backends:
//   direct  exact entrywise evaluation, arbitrary real frequencies
//   nfft    gridding with a Kaiser-Bessel window, oversampled power-of-two
//           FFT and deconvolution; integer frequencies only
//
// Sub-block products A^{X, Omega} rhs treat the frequency subset as a
// zero-padded coefficient vector and restrict the output to the node subset.
//

#include <fflt/matrix.hpp>

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fflt {

enum class FourierKind
{
    direct,
    nfft
};

inline FourierKind fourier_kind_by_name(const std::string& name)
{
    if (name == "direct")
        return FourierKind::direct;
    if (name == "nfft")
        return FourierKind::nfft;
    throw std::invalid_argument("unknown Fourier backend '" + name + "' (expected direct or nfft)");
}

namespace detail {

// e^{2 pi i t} with the integer part of t removed first
inline complex unit_phase(real t)
{
    const real frac = t - std::floor(t);
    return std::polar(1.0, 2 * std::numbers::pi * frac);
}

// Kaiser-Bessel window with cutoff m on a grid of length n and shape b.
inline real kaiser_bessel(real d, int m, real n, real b)
{
    const real t = m * real(m) - (n * d) * (n * d);
    if (t < 0)
        return 0;
    if (t == 0)
        return b / std::numbers::pi;
    const real r = std::sqrt(t);
    return std::sinh(b * r) / (std::numbers::pi * r);
}

// n * phi_hat(k) for the window above.
inline real kaiser_bessel_hat_scaled(real k, int m, real n, real b)
{
    const real w = 2 * std::numbers::pi * k / n;
    return std::cyl_bessel_i(0.0, m * std::sqrt(b * b - w * w));
}

inline real kaiser_bessel_shape(real sigma)
{
    return std::numbers::pi * (2 - 1 / sigma);
}

inline std::mutex& fftw_planner_mutex()
{
    static std::mutex mu;
    return mu;
}

// fftw plan handle; execution through fftw_execute_dft is reentrant.
class FftPlan
{
public:
    FftPlan(std::size_t n, int sign)
    {
        std::vector<complex> scratch(n);
        auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
        std::lock_guard lock(fftw_planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan_)
            throw std::runtime_error("fftw plan creation failed");
    }
    ~FftPlan()
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan_);
    }
    FftPlan(const FftPlan&)            = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    void execute(std::span<complex> data) const
    {
        auto* p = reinterpret_cast<fftw_complex*>(data.data());
        fftw_execute_dft(plan_, p, p);
    }

private:
    fftw_plan plan_ = nullptr;
};

inline std::size_t next_pow2(std::size_t v)
{
    return std::bit_ceil(std::max<std::size_t>(v, 1));
}

// Max entrywise error of the nfft effective matrix at oversampling 2, i.e.
// the 1->inf norm of A - A_tilde, measured on a fixed calibration grid.
inline real nfft_calibration_error(int m)
{
    constexpr int B = 64;
    constexpr int n = 2 * B;
    const real b = kaiser_bessel_shape(2.0);
    real worst = 0;
    for (int k = -B / 2; k < B / 2; ++k)
    {
        const real scale = 1 / kaiser_bessel_hat_scaled(k, m, n, b);
        for (int s = 0; s < 64; ++s)
        {
            const real x = 0.25 + s / (64.0 * n); // one grid cell
            const real cell = x * n;
            const long lo = static_cast<long>(std::floor(cell)) - m;
            complex acc{};
            for (long l = lo; l <= lo + 2 * m + 1; ++l)
                acc += unit_phase(static_cast<real>(k) * l / n) * kaiser_bessel(x - static_cast<real>(l) / n, m, n, b);
            worst = max_nan(worst, std::abs(acc * scale - unit_phase(k * x)));
        }
    }
    return worst;
}

inline constexpr int max_nfft_cutoff = 14;

inline const std::array<real, max_nfft_cutoff + 1>& nfft_calibration_table()
{
    static const auto table = [] {
        std::array<real, max_nfft_cutoff + 1> t{};
        t[0] = 2;
        for (int m = 1; m <= max_nfft_cutoff; ++m)
            t[m] = nfft_calibration_error(m);
        return t;
    }();
    return table;
}

} // namespace detail

// Smallest window cutoff whose calibrated error meets epsilon_F.
inline int nfft_cutoff_for_accuracy(real epsilon_f)
{
    if (!(epsilon_f > 0 && epsilon_f < 1))
        throw std::invalid_argument("Fourier accuracy must lie in (0, 1)");
    const auto& table = detail::nfft_calibration_table();
    for (int m = 1; m <= detail::max_nfft_cutoff; ++m)
        if (table[m] <= epsilon_f)
            return m;
    throw std::invalid_argument("Fourier accuracy below what the window can reach");
}

class FourierBackend
{
public:
    FourierKind           kind() const noexcept { return kind_; }
    std::span<const real> nodes() const noexcept { return x_; }
    std::span<const real> frequencies() const noexcept { return freqs_; }
    std::size_t           node_count() const noexcept { return x_.size(); }
    std::size_t           frequency_count() const noexcept { return freqs_.size(); }

    // window cutoff m_w (0 for the direct backend)
    int         cutoff() const noexcept { return nfft_ ? nfft_->m : 0; }
    std::size_t grid_size() const noexcept { return nfft_ ? nfft_->n : 0; }

    // A^{X, Omega} rhs, rhs of shape |Omega| x r
    ComplexMatrix apply_block(std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                              const ComplexMatrix& rhs) const
    {
        check_subsets(rows, cols);
        if (rhs.rows() != cols.size())
            throw std::invalid_argument("right hand side rows must match the frequency subset");
        ComplexMatrix out(rows.size(), rhs.cols());
        if (rows.empty() || cols.empty() || rhs.cols() == 0)
            return out;
        if (kind_ == FourierKind::direct)
            direct_block(rows, cols, rhs, out);
        else
            nfft_block(rows, cols, rhs, out);
        return out;
    }

    // (A^{X, Omega})^* rhs, rhs of shape |X| x r
    ComplexMatrix apply_adjoint_block(std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                                      const ComplexMatrix& rhs) const
    {
        check_subsets(rows, cols);
        if (rhs.rows() != rows.size())
            throw std::invalid_argument("right hand side rows must match the node subset");
        ComplexMatrix out(cols.size(), rhs.cols());
        if (rows.empty() || cols.empty() || rhs.cols() == 0)
            return out;
        if (kind_ == FourierKind::direct)
            direct_adjoint_block(rows, cols, rhs, out);
        else
            nfft_adjoint_block(rows, cols, rhs, out);
        return out;
    }

    std::vector<complex> apply(std::span<const complex> coeffs) const
    {
        ComplexMatrix rhs(coeffs.size(), 1);
        std::copy(coeffs.begin(), coeffs.end(), rhs.values().begin());
        const auto rows = iota(node_count());
        const auto cols = iota(frequency_count());
        auto out = apply_block(rows, cols, rhs);
        return {out.values().begin(), out.values().end()};
    }

    std::vector<complex> apply_adjoint(std::span<const complex> values) const
    {
        ComplexMatrix rhs(values.size(), 1);
        std::copy(values.begin(), values.end(), rhs.values().begin());
        const auto rows = iota(node_count());
        const auto cols = iota(frequency_count());
        auto out = apply_adjoint_block(rows, cols, rhs);
        return {out.values().begin(), out.values().end()};
    }

private:
    friend FourierBackend make_nfft_backend(std::span<const real>, std::span<const real>, int);
    friend FourierBackend make_direct_backend(std::span<const real>, std::span<const real>);

    struct Nfft
    {
        int                          m = 0;
        std::size_t                  n = 0;
        long                         k0 = 0;   // frequency shift, k' = k - k0
        long                         kmin = 0; // smallest shifted frequency
        std::vector<long>            shifted;  // k' per frequency index
        std::vector<real>            deconv;   // 1 / (n phi_hat(k')), indexed by k' - kmin
        std::vector<std::size_t>     first;    // first grid index touched by node j
        std::vector<real>            window;   // (2m + 2) window values per node
        std::vector<complex>         phase;    // e^{2 pi i k0 x_j}
        std::unique_ptr<detail::FftPlan> backward;
        std::unique_ptr<detail::FftPlan> forward;
    };

    static std::vector<std::size_t> iota(std::size_t n)
    {
        std::vector<std::size_t> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = i;
        return v;
    }

    void check_subsets(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const
    {
        for (auto r : rows)
            if (r >= x_.size())
                throw std::out_of_range("node subset index out of range");
        for (auto c : cols)
            if (c >= freqs_.size())
                throw std::out_of_range("frequency subset index out of range");
    }

    void direct_block(std::span<const std::size_t> rows, std::span<const std::size_t> cols, const ComplexMatrix& rhs,
                      ComplexMatrix& out) const
    {
        const std::size_t r = rhs.cols();
        for (std::size_t a = 0; a < rows.size(); ++a)
        {
            const real x = x_[rows[a]];
            auto o = out.row(a);
            for (std::size_t t = 0; t < cols.size(); ++t)
            {
                const complex e = detail::unit_phase(freqs_[cols[t]] * x);
                auto in = rhs.row(t);
                for (std::size_t c = 0; c < r; ++c)
                    o[c] += e * in[c];
            }
        }
    }

    void direct_adjoint_block(std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                              const ComplexMatrix& rhs, ComplexMatrix& out) const
    {
        const std::size_t r = rhs.cols();
        for (std::size_t a = 0; a < rows.size(); ++a)
        {
            const real x = x_[rows[a]];
            auto in = rhs.row(a);
            for (std::size_t t = 0; t < cols.size(); ++t)
            {
                const complex e = std::conj(detail::unit_phase(freqs_[cols[t]] * x));
                auto o = out.row(t);
                for (std::size_t c = 0; c < r; ++c)
                    o[c] += e * in[c];
            }
        }
    }

    void nfft_block(std::span<const std::size_t> rows, std::span<const std::size_t> cols, const ComplexMatrix& rhs,
                    ComplexMatrix& out) const
    {
        const Nfft& p = *nfft_;
        const std::size_t width = 2 * static_cast<std::size_t>(p.m) + 2;
        const std::size_t mask = p.n - 1;
        std::vector<complex> grid(p.n);
        for (std::size_t c = 0; c < rhs.cols(); ++c)
        {
            std::fill(grid.begin(), grid.end(), complex{});
            for (std::size_t t = 0; t < cols.size(); ++t)
            {
                const long k = p.shifted[cols[t]];
                grid[static_cast<std::size_t>(k) & mask] += rhs(t, c) * p.deconv[k - p.kmin];
            }
            p.backward->execute(grid);
            for (std::size_t a = 0; a < rows.size(); ++a)
            {
                const std::size_t j = rows[a];
                const real* w = p.window.data() + j * width;
                std::size_t idx = p.first[j];
                complex acc{};
                for (std::size_t s = 0; s < width; ++s, idx = (idx + 1) & mask)
                    acc += grid[idx] * w[s];
                out(a, c) = acc * p.phase[j];
            }
        }
    }

    void nfft_adjoint_block(std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                            const ComplexMatrix& rhs, ComplexMatrix& out) const
    {
        const Nfft& p = *nfft_;
        const std::size_t width = 2 * static_cast<std::size_t>(p.m) + 2;
        const std::size_t mask = p.n - 1;
        std::vector<complex> grid(p.n);
        for (std::size_t c = 0; c < rhs.cols(); ++c)
        {
            std::fill(grid.begin(), grid.end(), complex{});
            for (std::size_t a = 0; a < rows.size(); ++a)
            {
                const std::size_t j = rows[a];
                const complex v = rhs(a, c) * std::conj(p.phase[j]);
                const real* w = p.window.data() + j * width;
                std::size_t idx = p.first[j];
                for (std::size_t s = 0; s < width; ++s, idx = (idx + 1) & mask)
                    grid[idx] += v * w[s];
            }
            p.forward->execute(grid);
            for (std::size_t t = 0; t < cols.size(); ++t)
            {
                const long k = p.shifted[cols[t]];
                out(t, c) = grid[static_cast<std::size_t>(k) & mask] * p.deconv[k - p.kmin];
            }
        }
    }

    FourierKind           kind_ = FourierKind::direct;
    std::vector<real>     x_;
    std::vector<real>     freqs_;
    std::shared_ptr<const Nfft> nfft_;
};

namespace detail {

inline void check_fourier_nodes(std::span<const real> x)
{
    for (real v : x)
        if (!(v >= 0 && v < 1))
            throw std::invalid_argument("Fourier nodes must lie in [0, 1)");
}

} // namespace detail

inline FourierBackend make_direct_backend(std::span<const real> x_nodes, std::span<const real> freqs)
{
    detail::check_fourier_nodes(x_nodes);
    for (real f : freqs)
        if (!std::isfinite(f))
            throw std::invalid_argument("frequencies must be finite");
    FourierBackend b;
    b.kind_ = FourierKind::direct;
    b.x_.assign(x_nodes.begin(), x_nodes.end());
    b.freqs_.assign(freqs.begin(), freqs.end());
    return b;
}

//
// Window cutoff m_w given explicitly. The oversampled grid is the next power of
// two of at least twice the frequency bandwidth.
//
inline FourierBackend make_nfft_backend(std::span<const real> x_nodes, std::span<const real> freqs, int cutoff)
{
    detail::check_fourier_nodes(x_nodes);
    if (cutoff < 1)
        throw std::invalid_argument("window cutoff must be at least 1");
    if (freqs.empty())
        throw std::invalid_argument("nfft backend needs at least one frequency");
    for (real f : freqs)
        if (!std::isfinite(f) || f != std::round(f) || std::abs(f) > 1e15)
            throw std::invalid_argument("nfft backend requires integer frequencies");

    FourierBackend b;
    b.kind_ = FourierKind::nfft;
    b.x_.assign(x_nodes.begin(), x_nodes.end());
    b.freqs_.assign(freqs.begin(), freqs.end());

    auto p = std::make_shared<FourierBackend::Nfft>();
    const auto [lo_it, hi_it] = std::minmax_element(freqs.begin(), freqs.end());
    const long kmin = static_cast<long>(*lo_it);
    const long kmax = static_cast<long>(*hi_it);
    const long bandwidth = kmax - kmin + 1;
    p->m = cutoff;
    p->n = detail::next_pow2(2 * static_cast<std::size_t>(bandwidth));
    p->k0 = kmin + bandwidth / 2;
    p->kmin = kmin - p->k0;

    const real n = static_cast<real>(p->n);
    const real bshape = detail::kaiser_bessel_shape(n / static_cast<real>(bandwidth));

    p->shifted.resize(freqs.size());
    for (std::size_t t = 0; t < freqs.size(); ++t)
        p->shifted[t] = static_cast<long>(freqs[t]) - p->k0;
    p->deconv.resize(bandwidth);
    for (long k = 0; k < bandwidth; ++k)
        p->deconv[k] = 1 / detail::kaiser_bessel_hat_scaled(static_cast<real>(k + p->kmin), cutoff, n, bshape);

    const std::size_t width = 2 * static_cast<std::size_t>(cutoff) + 2;
    p->first.resize(x_nodes.size());
    p->window.resize(x_nodes.size() * width);
    p->phase.resize(x_nodes.size());
    for (std::size_t j = 0; j < x_nodes.size(); ++j)
    {
        const real x = x_nodes[j];
        const long lo = static_cast<long>(std::floor(x * n)) - cutoff;
        const long wrapped = ((lo % static_cast<long>(p->n)) + static_cast<long>(p->n)) % static_cast<long>(p->n);
        p->first[j] = static_cast<std::size_t>(wrapped);
        for (std::size_t s = 0; s < width; ++s)
            p->window[j * width + s] = detail::kaiser_bessel(x - static_cast<real>(lo + static_cast<long>(s)) / n,
                                                             cutoff, n, bshape);
        p->phase[j] = detail::unit_phase(static_cast<real>(p->k0) * x);
    }
    p->backward = std::make_unique<detail::FftPlan>(p->n, FFTW_BACKWARD);
    p->forward = std::make_unique<detail::FftPlan>(p->n, FFTW_FORWARD);
    b.nfft_ = std::move(p);
    return b;
}

//
// epsilon_F drives the window cutoff for the nfft backend through the
// calibration table; the direct backend is exact and ignores it.
//
inline FourierBackend make_backend(FourierKind kind, std::span<const real> x_nodes, std::span<const real> freqs,
                                   real epsilon_f)
{
    if (kind == FourierKind::direct)
        return make_direct_backend(x_nodes, freqs);
    return make_nfft_backend(x_nodes, freqs, nfft_cutoff_for_accuracy(epsilon_f));
}

} // namespace fflt
