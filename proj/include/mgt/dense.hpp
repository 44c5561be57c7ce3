#pragma once

// Small dense matrices and the factorizations the rest of the library needs.
// Sizes here stay in the tens, so everything is plain row-major storage.

#include "mgt/real.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <utility>
#include <vector>

namespace mgt {

template <class Real>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const Real& fill = Real(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Real(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Real& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const Real& operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Leading r x c block.
    Matrix block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const {
        Matrix b(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    Real max_abs() const {
        Real m(0);
        for (const auto& x : data_) m = std::max(m, real_abs(x));
        return m;
    }

    bool exactly_symmetric() const {
        if (!square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    /// (A + A^T) / 2, exactly symmetric.
    Matrix symmetrized() const {
        Matrix s(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j) {
                Real v = ((*this)(i, j) + (*this)(j, i)) / Real(2);
                s(i, j) = v;
                s(j, i) = v;
            }
        return s;
    }

    Matrix& operator+=(const Matrix& o) {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const Real& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Real& s) { return a *= s; }
    friend Matrix operator*(const Real& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        assert(a.cols_ == b.rows_);
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Real& aik = a(i, k);
                if (aik == Real(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend std::vector<Real> operator*(const Matrix& a, const std::vector<Real>& x) {
        assert(a.cols_ == x.size());
        std::vector<Real> y(a.rows_, Real(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
        return y;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Real> data_;
};

template <class Real>
Real max_abs_diff(const Matrix<Real>& a, const Matrix<Real>& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    Real m(0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, real_abs(a(i, j) - b(i, j)));
    return m;
}

/// LU with partial pivoting, PA = LU.
template <class Real>
class LuDecomposition {
public:
    explicit LuDecomposition(Matrix<Real> a) : lu_(std::move(a)), perm_(lu_.rows()) {
        assert(lu_.square());
        const std::size_t n = lu_.rows();
        for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            Real best = real_abs(lu_(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                Real v = real_abs(lu_(i, k));
                if (v > best) {
                    best = v;
                    p = i;
                }
            }
            if (best == Real(0)) {
                singular_ = true;
                continue;
            }
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
                std::swap(perm_[k], perm_[p]);
                sign_ = -sign_;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                lu_(i, k) /= lu_(k, k);
                const Real f = lu_(i, k);
                if (f == Real(0)) continue;
                for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
            }
        }
    }

    std::size_t size() const { return lu_.rows(); }
    bool singular() const { return singular_; }

    Real determinant() const {
        Real d(sign_);
        for (std::size_t i = 0; i < size(); ++i) d *= lu_(i, i);
        return d;
    }

    std::vector<Real> solve(const std::vector<Real>& b) const {
        const std::size_t n = size();
        assert(b.size() == n);
        std::vector<Real> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            Real s = b[perm_[i]];
            for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
            x[i] = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            Real s = x[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(ii, j) * x[j];
            x[ii] = s / lu_(ii, ii);
        }
        return x;
    }

    Matrix<Real> inverse() const {
        const std::size_t n = size();
        Matrix<Real> inv(n, n);
        std::vector<Real> e(n, Real(0));
        for (std::size_t j = 0; j < n; ++j) {
            std::fill(e.begin(), e.end(), Real(0));
            e[j] = Real(1);
            auto col = solve(e);
            for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
        }
        return inv;
    }

private:
    Matrix<Real> lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
    bool singular_ = false;
};

template <class Real>
Real determinant(const Matrix<Real>& a) {
    if (a.rows() == 0) return Real(1);
    return LuDecomposition<Real>(a).determinant();
}

template <class Real>
Real norm1(const Matrix<Real>& a) {
    Real best(0);
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Real s(0);
        for (std::size_t i = 0; i < a.rows(); ++i) s += real_abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

/// 1-norm condition number from an explicit inverse; infinity when singular.
template <class Real>
double condition_number(const Matrix<Real>& a) {
    if (a.rows() == 0) return 1.0;
    LuDecomposition<Real> lu(a);
    if (lu.singular()) return std::numeric_limits<double>::infinity();
    return to_double(norm1(a) * norm1(lu.inverse()));
}

/// Lower Cholesky factor with positive diagonal; nullopt if a pivot is not positive.
template <class Real>
std::optional<Matrix<Real>> cholesky(const Matrix<Real>& a) {
    assert(a.square());
    const std::size_t n = a.rows();
    Matrix<Real> l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Real d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > Real(0))) return std::nullopt;
        l(j, j) = real_sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            Real s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

/// Unpivoted A = L D L^T with L unit lower triangular.
template <class Real>
struct LdlResult {
    Matrix<Real> unit_lower;
    std::vector<Real> diag;
    std::optional<std::size_t> failed_at;  ///< first pivot below threshold
};

/// Pivot k fails when |D_kk| <= rel_tol * max_{j<=k} |A_kj|.
template <class Real>
LdlResult<Real> ldl(const Matrix<Real>& a, const Real& rel_tol) {
    assert(a.square());
    const std::size_t n = a.rows();
    LdlResult<Real> r{Matrix<Real>::identity(n), std::vector<Real>(n, Real(0)), std::nullopt};
    auto& l = r.unit_lower;
    for (std::size_t j = 0; j < n; ++j) {
        Real d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k) * r.diag[k];
        Real scale(0);
        for (std::size_t k = 0; k <= j; ++k) scale = std::max(scale, real_abs(a(j, k)));
        if (real_abs(d) <= rel_tol * scale) {
            r.failed_at = j;
            return r;
        }
        r.diag[j] = d;
        for (std::size_t i = j + 1; i < n; ++i) {
            Real s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k) * r.diag[k];
            l(i, j) = s / d;
        }
    }
    return r;
}

/// Inverse of a unit lower triangular matrix by forward substitution.
template <class Real>
Matrix<Real> unit_lower_inverse(const Matrix<Real>& l) {
    const std::size_t n = l.rows();
    Matrix<Real> inv = Matrix<Real>::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Real s(0);
            for (std::size_t k = j; k < i; ++k) s -= l(i, k) * inv(k, j);
            inv(i, j) = s;
        }
    return inv;
}

}  // namespace mgt
