#pragma once
//
// Benchmark support: reproducible test problems, the relative error metric
// E = ||f - f_tilde||_inf / ||fhat||_1 and the CSV benchmark record.
//

#include <fflt/matrix.hpp>
#include <fflt/random.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fflt {

struct TestData
{
    std::vector<complex> fhat;
    std::vector<real>    xi; // n, n-1, ..., 1
    std::vector<real>    x;  // [0, 1)
    std::vector<real>    y;  // descending in (0, (2q - 1) log 2]

    // z_j = e^{-y_j} e^{2 pi i x_j}
    std::vector<complex> disk_nodes() const
    {
        std::vector<complex> z(y.size());
        for (std::size_t j = 0; j < y.size(); ++j)
            z[j] = std::polar(std::exp(-y[j]), 2 * std::numbers::pi * x[j]);
        return z;
    }
};

inline real spatial_extent(int q)
{
    return (2 * q - 1) * std::numbers::ln2;
}

//
// Draw order: coefficients (real parts, then imaginary parts if requested),
// Fourier nodes x, spatial nodes y. Coefficients are uniform in [0, 1).
//
inline TestData gen_testdata(std::size_t n, int q, std::uint64_t seed, bool complex_coefficients = false)
{
    if (n == 0)
        throw std::invalid_argument("test data needs n >= 1");
    if (q < 1)
        throw std::invalid_argument("test data needs q >= 1");
    Random rng(seed);
    TestData d;
    d.fhat.resize(n);
    for (auto& c : d.fhat)
        c = rng.uniform();
    if (complex_coefficients)
        for (auto& c : d.fhat)
            c.imag(rng.uniform());
    d.xi.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        d.xi[k] = static_cast<real>(n - k);
    d.x.resize(n);
    for (auto& v : d.x)
        v = rng.uniform();
    const real top = spatial_extent(q);
    d.y.resize(n);
    for (auto& v : d.y)
        v = top * rng.uniform_positive();
    std::sort(d.y.begin(), d.y.end(), std::greater<>());
    return d;
}

inline real norm1(std::span<const complex> v)
{
    real s = 0;
    for (const auto& c : v)
        s += std::abs(c);
    return s;
}

inline real max_abs_diff(std::span<const complex> a, std::span<const complex> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vectors differ in length");
    real d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = max_nan(d, std::abs(a[i] - b[i]));
    return d;
}

// ||f - f_tilde||_inf / ||fhat||_1
inline real relative_error(std::span<const complex> f, std::span<const complex> ftilde,
                           std::span<const complex> fhat)
{
    const real scale = norm1(fhat);
    if (!(scale > 0))
        throw std::invalid_argument("relative error needs a nonzero coefficient vector");
    return max_abs_diff(f, ftilde) / scale;
}

struct BenchRecord
{
    std::size_t         n = 0;
    real                epsilon = 0;
    int                 q = 0;
    int                 M = 0;
    std::optional<real> E;
    real                time_fast_s = 0;
    std::optional<real> time_naive_s;

    static std::string csv_header() { return "n,epsilon,q,M,E,time_fast_s,time_naive_s"; }

    std::string csv_row() const;
};

// %.17g, round-trip exact for binary64
inline std::string format_real(real v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string BenchRecord::csv_row() const
{
    std::string s = std::to_string(n) + ',' + format_real(epsilon) + ',' + std::to_string(q) + ','
                  + std::to_string(M) + ',';
    if (E)
        s += format_real(*E);
    s += ',' + format_real(time_fast_s) + ',';
    if (time_naive_s)
        s += format_real(*time_naive_s);
    return s;
}

// Median wall-clock seconds of `repeats` runs on the steady clock.
inline real median_seconds(const std::function<void()>& run, int repeats)
{
    if (repeats < 1)
        throw std::invalid_argument("repeats must be positive");
    std::vector<real> t(repeats);
    for (auto& v : t)
    {
        const auto start = std::chrono::steady_clock::now();
        run();
        v = std::chrono::duration<real>(std::chrono::steady_clock::now() - start).count();
    }
    std::nth_element(t.begin(), t.begin() + repeats / 2, t.end());
    return t[repeats / 2];
}

} // namespace fflt
