#pragma once

#include "mgt/dense.hpp"

#include <stdexcept>
#include <vector>

namespace mgt {

/// Square M x M finite section of a banded operator. Entry (i, j) is stored iff
/// -lower <= j - i <= upper; everything else is exactly zero.
template <class Real>
class BandMatrix {
public:
    BandMatrix() = default;
    BandMatrix(std::size_t size, std::size_t lower, std::size_t upper)
        : size_(size), lower_(lower), upper_(upper), data_(size * (lower + upper + 1), Real(0)) {}

    std::size_t size() const { return size_; }
    std::size_t lower() const { return lower_; }
    std::size_t upper() const { return upper_; }

    bool in_band(std::size_t i, std::size_t j) const {
        return i < size_ && j < size_ && j + lower_ >= i && j <= i + upper_;
    }

    Real operator()(std::size_t i, std::size_t j) const {
        return in_band(i, j) ? data_[index(i, j)] : Real(0);
    }

    Real& at(std::size_t i, std::size_t j) {
        if (!in_band(i, j)) throw std::out_of_range("band entry outside the stored band");
        return data_[index(i, j)];
    }

    /// First and one-past-last stored column of row i.
    std::size_t row_begin(std::size_t i) const { return i > lower_ ? i - lower_ : 0; }
    std::size_t row_end(std::size_t i) const { return std::min(size_, i + upper_ + 1); }

    Matrix<Real> dense() const {
        Matrix<Real> m(size_, size_);
        for (std::size_t i = 0; i < size_; ++i)
            for (std::size_t j = row_begin(i); j < row_end(i); ++j) m(i, j) = (*this)(i, j);
        return m;
    }

    /// Copy of a dense matrix restricted to the given band (entries outside are dropped).
    static BandMatrix from_dense(const Matrix<Real>& m, std::size_t lower, std::size_t upper) {
        BandMatrix b(m.rows(), lower, upper);
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = b.row_begin(i); j < b.row_end(i); ++j) b.at(i, j) = m(i, j);
        return b;
    }

    /// Leading m x m section with the same bandwidths.
    BandMatrix leading(std::size_t m) const {
        BandMatrix b(std::min(m, size_), lower_, upper_);
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = b.row_begin(i); j < b.row_end(i); ++j) b.at(i, j) = (*this)(i, j);
        return b;
    }

    /// Stored diagonal at offset d in [-lower, upper], top-left first.
    std::vector<Real> diagonal(long offset) const {
        std::vector<Real> out;
        for (std::size_t i = 0; i < size_; ++i) {
            const long j = static_cast<long>(i) + offset;
            if (j >= 0 && static_cast<std::size_t>(j) < size_) out.push_back((*this)(i, static_cast<std::size_t>(j)));
        }
        return out;
    }

    friend BandMatrix operator+(const BandMatrix& a, const BandMatrix& b) {
        if (a.size_ != b.size_) throw std::invalid_argument("band sizes differ");
        BandMatrix c(a.size_, std::max(a.lower_, b.lower_), std::max(a.upper_, b.upper_));
        for (std::size_t i = 0; i < c.size_; ++i)
            for (std::size_t j = c.row_begin(i); j < c.row_end(i); ++j) c.at(i, j) = a(i, j) + b(i, j);
        return c;
    }

    friend BandMatrix operator*(const Real& s, BandMatrix a) {
        for (auto& x : a.data_) x *= s;
        return a;
    }

private:
    std::size_t index(std::size_t i, std::size_t j) const { return i * (lower_ + upper_ + 1) + (j + lower_ - i); }

    std::size_t size_ = 0;
    std::size_t lower_ = 0;
    std::size_t upper_ = 0;
    std::vector<Real> data_;
};

/// max |a_ij - b_ij| over the leading window x window block.
template <class Real>
Real max_abs_diff(const BandMatrix<Real>& a, const BandMatrix<Real>& b, std::size_t window) {
    window = std::min({window, a.size(), b.size()});
    const std::size_t reach = std::max({a.lower(), a.upper(), b.lower(), b.upper()});
    Real m(0);
    for (std::size_t i = 0; i < window; ++i) {
        const std::size_t lo = i > reach ? i - reach : 0;
        const std::size_t hi = std::min(window, i + reach + 1);
        for (std::size_t j = lo; j < hi; ++j) m = std::max(m, real_abs(a(i, j) - b(i, j)));
    }
    return m;
}

template <class Real>
Real max_abs(const BandMatrix<Real>& a, std::size_t window) {
    window = std::min(window, a.size());
    Real m(0);
    for (std::size_t i = 0; i < window; ++i)
        for (std::size_t j = a.row_begin(i); j < std::min(window, a.row_end(i)); ++j) m = std::max(m, real_abs(a(i, j)));
    return m;
}

}  // namespace mgt
