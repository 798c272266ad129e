#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tstein/error.hpp"

namespace tstein {

using Complex = std::complex<double>;

/**
 * Dense complex matrix stored column-major.
 *
 * The storage order is the vec ordering used throughout the library:
 * entry (i, j) of an m x n matrix sits at position i + j*m, so the raw
 * data of X is exactly vec(X). Zero-sized matrices are allowed as
 * intermediate blocks; user-facing loaders reject them.
 */
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols, Complex fill = Complex{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    /// Row-wise literal, convenient for tests: {{1, 2}, {3, 4}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.resize(rows_ * cols_);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != cols_) throw ShapeError("ComplexMatrix: ragged row literal");
            std::size_t j = 0;
            for (const auto& v : row) (*this)(i, j++) = v;
            ++i;
        }
    }

    /// Adopts column-major data; throws if the size is wrong or any entry is not finite.
    static ComplexMatrix from_column_major(std::size_t rows, std::size_t cols, std::vector<Complex> data) {
        if (data.size() != rows * cols) throw ShapeError("from_column_major: entry count does not match shape");
        for (const auto& v : data) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw InvalidInput("from_column_major: non-finite entry");
        }
        ComplexMatrix m;
        m.rows_ = rows;
        m.cols_ = cols;
        m.data_ = std::move(data);
        return m;
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const Complex> d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static ComplexMatrix diagonal(std::initializer_list<Complex> d) {
        return diagonal(std::span<const Complex>(d.begin(), d.size()));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i + j * rows_]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i + j * rows_]; }

    std::span<Complex> data() noexcept { return data_; }
    std::span<const Complex> data() const noexcept { return data_; }

    std::span<Complex> column(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
    std::span<const Complex> column(std::size_t j) const noexcept { return {data_.data() + j * rows_, rows_}; }

    ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block: out of range");
        ComplexMatrix out(nr, nc);
        for (std::size_t j = 0; j < nc; ++j)
            for (std::size_t i = 0; i < nr; ++i) out(i, j) = (*this)(r0 + i, c0 + j);
        return out;
    }

    void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& src) {
        if (r0 + src.rows() > rows_ || c0 + src.cols() > cols_) throw ShapeError("set_block: out of range");
        for (std::size_t j = 0; j < src.cols(); ++j)
            for (std::size_t i = 0; i < src.rows(); ++i) (*this)(r0 + i, c0 + j) = src(i, j);
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o, "operator+=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o, "operator-=");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    ComplexMatrix& operator*=(Complex s) noexcept {
        for (auto& v : data_) v *= s;
        return *this;
    }

    bool operator==(const ComplexMatrix& o) const = default;

private:
    void require_same_shape(const ComplexMatrix& o, const char* where) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError(std::string(where) + ": shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
inline ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
inline ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matrix product: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto cj = c.column(j);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex bkj = b(k, j);
            if (bkj == Complex{}) continue;
            auto ak = a.column(k);
            for (std::size_t i = 0; i < a.rows(); ++i) cj[i] += ak[i] * bkj;
        }
    }
    return c;
}

/// Plain transpose, no conjugation.
inline ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) t(j, i) = a(i, j);
    return t;
}

/// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) t(j, i) = std::conj(a(i, j));
    return t;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    // scaled accumulation keeps huge/tiny entries from overflowing
    double scale = 0.0;
    for (const auto& v : a.data()) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& v : a.data()) sum += std::norm(v / scale);
    return scale * std::sqrt(sum);
}

/// Maximum absolute row sum.
inline double inf_norm(const ComplexMatrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

inline double max_abs(const ComplexMatrix& a) {
    double best = 0.0;
    for (const auto& v : a.data()) best = std::max(best, std::abs(v));
    return best;
}

/// Largest |entry| strictly below the main diagonal.
inline double lower_magnitude(const ComplexMatrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = j + 1; i < a.rows(); ++i) best = std::max(best, std::abs(a(i, j)));
    return best;
}

inline bool all_finite(const ComplexMatrix& a) {
    return std::all_of(a.data().begin(), a.data().end(),
                       [](const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

/// Column-major stacking; returns an mn x 1 matrix.
inline ComplexMatrix vec(const ComplexMatrix& x) {
    return ComplexMatrix::from_column_major(x.size(), 1, std::vector<Complex>(x.data().begin(), x.data().end()));
}

inline ComplexMatrix unvec(const ComplexMatrix& v, std::size_t rows, std::size_t cols) {
    if (v.size() != rows * cols) throw ShapeError("unvec: length does not match target shape");
    ComplexMatrix x(rows, cols);
    std::copy(v.data().begin(), v.data().end(), x.data().begin());
    return x;
}

/// Zeroes every entry strictly below the main diagonal.
inline ComplexMatrix upper_part(ComplexMatrix a) {
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = j + 1; i < a.rows(); ++i) a(i, j) = Complex{};
    return a;
}

inline std::vector<Complex> diagonal_of(const ComplexMatrix& a) {
    std::vector<Complex> d(std::min(a.rows(), a.cols()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a(i, i);
    return d;
}

} // namespace tstein
