#pragma once
//
// Small dense row-major matrix used for kernel blocks and multi-column
// right hand sides. Nothing here tries to compete with a BLAS; the blocks
// are q x q with q rarely above 40.
//

#include <algorithm>
#include <cassert>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fflt {

using real    = double;
using complex = std::complex<double>;

// max that keeps a NaN from either side, for worst-case error sweeps
inline real max_nan(real a, real b)
{
    return (a != a || b <= a) ? a : b;
}

template <typename T>
class Matrix
{
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool        empty() const noexcept { return data_.empty(); }

    T&       operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T>       row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::span<T>       values() { return data_; }
    std::span<const T> values() const { return data_; }

    void set_zero() { std::fill(data_.begin(), data_.end(), T{}); }

    Matrix transposed() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t    rows_ = 0;
    std::size_t    cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix    = Matrix<real>;
using ComplexMatrix = Matrix<complex>;

// out += a * x
template <typename A, typename X, typename Y>
void gemv_add(const Matrix<A>& a, std::span<const X> x, std::span<Y> out)
{
    assert(x.size() == a.cols() && out.size() == a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        Y acc{};
        auto r = a.row(i);
        for (std::size_t j = 0; j < r.size(); ++j)
            acc += r[j] * x[j];
        out[i] += acc;
    }
}

// out += a^T * x
template <typename A, typename X, typename Y>
void gemv_t_add(const Matrix<A>& a, std::span<const X> x, std::span<Y> out)
{
    assert(x.size() == a.rows() && out.size() == a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        const X xi = x[i];
        auto    r  = a.row(i);
        for (std::size_t j = 0; j < r.size(); ++j)
            out[j] += r[j] * xi;
    }
}

} // namespace fflt
