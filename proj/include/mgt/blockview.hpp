#pragma once

// N x N matrix-polynomial reading of scalar sequences under y = h(t): unfolding via
// R_{k,h}, pushforward matrix moments, the mass block L and block partitions of
// (N, N)-band sections.

#include "mgt/factor.hpp"

#include <optional>

namespace mgt {

/// N x N grid of polynomials in y.
template <class Real>
struct MatrixPoly {
    std::size_t N = 0;
    std::vector<Polynomial<Real>> entries;  ///< row-major

    const Polynomial<Real>& operator()(std::size_t r, std::size_t k) const { return entries[r * N + k]; }
    std::optional<std::size_t> degree() const;
    /// Coefficient matrix of y^d.
    Matrix<Real> coeff(std::size_t d) const;
};

/// Entry (r, k) = R_{k,h}(p_{nN+r}).
template <class Real>
MatrixPoly<Real> unfold(const std::vector<Polynomial<Real>>& seq, const FactoredNodes<Real>& h, std::size_t n);

/// Row r of the grid folded back: sum_k t^k R_{k,h}(p)(h(t)).
template <class Real>
std::vector<Polynomial<Real>> refold(const MatrixPoly<Real>& m, const FactoredNodes<Real>& h);

template <class Real>
struct MatrixMoments {
    std::vector<Matrix<Real>> blocks;  ///< M_0 .. M_kmax
    bool with_masses = false;
};

/// M_k(i, j) = \int h^k t^{i+j} dmu, plus L at k = 0 when masses are given.
template <class Real>
MatrixMoments<Real> matrix_moments_pushforward(const MomentFunctional<Real>& mu, const FactoredNodes<Real>& h,
                                               const SobolevMass<Real>* masses, std::size_t k_max);

/// L = sum lambda_{(l,i),(w,j)} v_{l,i} v_{w,j}^T with v_{l,j}(k) = k!/(k-j)! a_l^{k-j}.
template <class Real>
Matrix<Real> mass_matrix_L(const SobolevMass<Real>& masses, const FactoredNodes<Real>& h);

/// (sum_{d,e} A_d M_{d+e} B_e^T) for matrix polynomials A, B.
template <class Real>
Matrix<Real> matrix_inner(const MatrixPoly<Real>& a, const MatrixPoly<Real>& b, const MatrixMoments<Real>& m);

template <class Real>
struct BlockGram {
    std::size_t N = 0;
    std::size_t blocks = 0;
    Matrix<Real> gram;                 ///< (blocks N) x (blocks N)
    double offdiag_residual = 0;       ///< max |G_ij| / sqrt(G_ii G_jj) outside diagonal blocks
    bool diagonal_blocks_spd = false;
};

/// Matrix Gram of unfold(seq, h, 0..blocks-1) against m.
template <class Real>
BlockGram<Real> block_gram(const std::vector<Polynomial<Real>>& seq, const FactoredNodes<Real>& h,
                           const MatrixMoments<Real>& m, std::size_t blocks);

template <class Real>
struct BlockPartition {
    std::size_t N = 0;
    std::size_t blocks = 0;
    std::vector<Matrix<Real>> grid;  ///< row-major blocks x blocks

    const Matrix<Real>& at(std::size_t i, std::size_t j) const { return grid[i * blocks + j]; }
    Matrix<Real> dense() const;
};

struct BlockStructureReport {
    std::size_t N = 0;
    std::size_t blocks = 0;
    bool block_tridiagonal = false;
    double outside_max = 0;               ///< max |entry| in blocks with |I - J| > 1
    double super_unitriangular_dev = 0;   ///< superdiagonal blocks vs lower unitriangular
};

/// Partition into N x N blocks (floor(M / N) per side). Throws when a bandwidth exceeds N.
template <class Real>
BlockPartition<Real> block_partition(const BandMatrix<Real>& band, std::size_t N);

template <class Real>
BlockStructureReport block_structure(const BlockPartition<Real>& p);

/// Blockwise product of two partitions.
template <class Real>
BlockPartition<Real> block_multiply(const BlockPartition<Real>& a, const BlockPartition<Real>& b);

}  // namespace mgt
