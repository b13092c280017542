#pragma once

// Small dense matrices with exact entries.
//
// Two layers: IMat with machine-integer entries (Cartan matrices, exchange
// matrices, exponent data) and QMat over arbitrary-precision rationals
// (basis changes, bilinear forms, Poisson skeletons). Sizes here are tiny
// (rank + word length), so plain Gauss-Jordan is exact and fast enough.

#include "tropcell/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

namespace tropcell {

template <class T>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, T fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Mat(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw MathError("ragged matrix initializer");
            for (const auto& v : row) data_.push_back(v);
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw MathError("matrix product shape mismatch");
        Mat p(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
            }
        return p;
    }

    Mat operator+(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw MathError("matrix sum shape mismatch");
        Mat s = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] += o.data_[i];
        return s;
    }

    Mat operator-(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw MathError("matrix difference shape mismatch");
        Mat s = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] -= o.data_[i];
        return s;
    }

    Mat operator*(const T& c) const {
        Mat s = *this;
        for (auto& v : s.data_) v *= c;
        return s;
    }

    Mat operator-() const { return (*this) * T(-1); }

    std::vector<T> apply(const std::vector<T>& x) const {
        if (x.size() != cols_) throw MathError("matrix apply shape mismatch");
        std::vector<T> y(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    std::vector<T> row(std::size_t i) const {
        std::vector<T> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using IMat = Mat<long long>;
using QMat = Mat<Rat>;

inline QMat to_qmat(const IMat& m) {
    QMat q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
    return q;
}

inline bool qmat_is_integral(const QMat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!is_integer(m(i, j))) return false;
    return true;
}

inline IMat to_imat(const QMat& m) {
    if (!qmat_is_integral(m)) throw MathError("matrix has non-integral entries");
    IMat z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) z(i, j) = to_ll(rat_num(m(i, j)));
    return z;
}

inline Rat qmat_det(QMat m) {
    if (m.rows() != m.cols()) throw MathError("determinant of non-square matrix");
    std::size_t n = m.rows();
    Rat det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

inline QMat qmat_inverse(QMat m) {
    if (m.rows() != m.cols()) throw MathError("inverse of non-square matrix");
    std::size_t n = m.rows();
    QMat inv = QMat::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) throw MathError("matrix is singular");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(p, j), m(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        Rat piv = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

// Solves M x = b exactly; throws if M is singular.
inline std::vector<Rat> qmat_solve(const QMat& m, const std::vector<Rat>& b) {
    return qmat_inverse(m).apply(b);
}

inline std::size_t qmat_rank(QMat m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t p = rank;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != rank)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(rank, j));
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) / m(rank, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Mat<T>& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << "]";
    }
    return os << "]";
}

}  // namespace tropcell
