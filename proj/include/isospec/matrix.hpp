#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace isospec {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Dense square complex matrix, row-major.
class Matrix {
public:
    explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
        if (dim == 0) throw UnsupportedDimension("matrix dimension must be at least 1");
    }

    Matrix(std::initializer_list<std::initializer_list<Complex>> rows) : Matrix(rows.size()) {
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != dim_) throw DimensionMismatch("matrix rows must form a square");
            std::size_t j = 0;
            for (const auto& v : row) (*this)(i, j++) = v;
            ++i;
        }
    }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(std::span<const Complex> diag) {
        Matrix m(diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
        return m;
    }

    static Matrix diagonal(std::initializer_list<Complex> diag) {
        return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
    }

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }

    std::span<const Complex> data() const noexcept { return data_; }
    std::span<Complex> data() noexcept { return data_; }

    bool all_finite() const {
        for (const auto& v : data_)
            if (!is_finite(v)) return false;
        return true;
    }

    Matrix& operator+=(const Matrix& rhs) {
        check_same(rhs);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& rhs) {
        check_same(rhs);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
        return *this;
    }

    Matrix& operator*=(Complex s) noexcept {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    void check_same(const Matrix& rhs) const {
        if (rhs.dim_ != dim_) throw DimensionMismatch("matrix dimensions differ");
    }

    std::size_t dim_;
    std::vector<Complex> data_;
};

inline Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
inline Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
inline Matrix operator*(Matrix a, Complex s) { return a *= s; }
inline Matrix operator*(Complex s, Matrix a) { return a *= s; }
inline Matrix operator-(Matrix a) { return a *= -1.0; }

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("matrix dimensions differ");
    const std::size_t n = a.dim();
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

/// zI - T
inline Matrix shifted(const Matrix& t, Complex z) {
    Matrix m = -t;
    for (std::size_t i = 0; i < m.dim(); ++i) m(i, i) += z;
    return m;
}

inline Matrix transpose(const Matrix& t) {
    Matrix r(t.dim());
    for (std::size_t i = 0; i < t.dim(); ++i)
        for (std::size_t j = 0; j < t.dim(); ++j) r(i, j) = t(j, i);
    return r;
}

inline Complex trace(const Matrix& t) {
    Complex s{};
    for (std::size_t i = 0; i < t.dim(); ++i) s += t(i, i);
    return s;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("matrix dimensions differ");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

/// Upper-triangular 2x2 family [[a, d], [0, b]].
inline Matrix upper_pair(Complex a, Complex b, Complex d) { return Matrix{{a, d}, {0.0, b}}; }

/// Block form [[g, 0, 0], [0, a, d], [0, 0, b]].
inline Matrix bordered_pair(Complex g, Complex a, Complex b, Complex d) {
    return Matrix{{g, 0.0, 0.0}, {0.0, a, d}, {0.0, 0.0, b}};
}

enum class Letter { X, XStar };

/// Product of copies of a matrix (X) and its adjoint (X*), read left to right.
class TraceWord {
public:
    explicit TraceWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
        if (letters_.empty()) throw InputError("trace word must be nonempty");
    }

    /// Parses strings such as "X*X", "XX*XXX*X*".
    static TraceWord parse(std::string_view text) {
        std::vector<Letter> letters;
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == ' ') continue;
            if (text[i] != 'X') throw InputError("trace word: unexpected character '" + std::string(1, text[i]) + "'");
            if (i + 1 < text.size() && text[i + 1] == '*') {
                letters.push_back(Letter::XStar);
                ++i;
            } else {
                letters.push_back(Letter::X);
            }
        }
        return TraceWord(std::move(letters));
    }

    std::span<const Letter> letters() const noexcept { return letters_; }
    std::size_t length() const noexcept { return letters_.size(); }

    std::string str() const {
        std::string s;
        for (auto l : letters_) s += (l == Letter::X) ? "X" : "X*";
        return s;
    }

private:
    std::vector<Letter> letters_;
};

}  // namespace isospec
