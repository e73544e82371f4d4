#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <vector>

namespace rdgfv {

/// Exact arbitrary-precision fraction. All stencil weights, ghost rules and
/// coefficient identities are generated in this type and converted to double
/// exactly once.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt factorial(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Dense matrix over the rationals. Small fixed systems only (moment systems,
/// the local quadratic-form matrix); no attempt at sparsity.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalMatrix transpose() const {
        RationalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RationalMatrix operator*(const RationalMatrix& other) const {
        if (cols_ != other.rows_) throw std::invalid_argument("RationalMatrix: shape mismatch");
        RationalMatrix out(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
            }
        return out;
    }

    std::vector<Rational> operator*(const std::vector<Rational>& v) const {
        if (cols_ != v.size()) throw std::invalid_argument("RationalMatrix: shape mismatch");
        std::vector<Rational> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    /// Gauss-Jordan inverse. Throws on a singular matrix.
    RationalMatrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("RationalMatrix: not square");
        const std::size_t n = rows_;
        RationalMatrix a = *this;
        RationalMatrix inv = identity(n);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = col;
            while (pivot < n && a(pivot, col) == 0) ++pivot;
            if (pivot == n) throw std::runtime_error("RationalMatrix: singular");
            if (pivot != col) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a(pivot, j), a(col, j));
                    std::swap(inv(pivot, j), inv(col, j));
                }
            }
            const Rational p = a(col, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(col, j) /= p;
                inv(col, j) /= p;
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (i == col || a(i, col) == 0) continue;
                const Rational f = a(i, col);
                for (std::size_t j = 0; j < n; ++j) {
                    a(i, j) -= f * a(col, j);
                    inv(i, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

    Rational determinant() const {
        if (rows_ != cols_) throw std::invalid_argument("RationalMatrix: not square");
        const std::size_t n = rows_;
        RationalMatrix a = *this;
        Rational det = 1;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = col;
            while (pivot < n && a(pivot, col) == 0) ++pivot;
            if (pivot == n) return 0;
            if (pivot != col) {
                for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
                det = -det;
            }
            det *= a(col, col);
            for (std::size_t i = col + 1; i < n; ++i) {
                if (a(i, col) == 0) continue;
                const Rational f = a(i, col) / a(col, col);
                for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
            }
        }
        return det;
    }

    bool operator==(const RationalMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

inline std::vector<Rational> solve(const RationalMatrix& a, const std::vector<Rational>& b) {
    return a.inverse() * b;
}

}  // namespace rdgfv
