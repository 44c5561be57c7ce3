#pragma once

// Finite sections of the banded operators around the transform and the
// factorization identities h(J_mon) = U_mon L_mon, J*_mon = L_mon U_mon, J* = C C^T.

#include "mgt/geronimus.hpp"

namespace mgt {

/// Section size M and the leading block on which semi-infinite identities are exact:
/// valid = M - N * products.
struct TruncationWindow {
    std::size_t M = 0;
    std::size_t N = 0;
    std::size_t products = 0;

    std::size_t valid() const { return M > N * products ? M - N * products : 0; }
};

struct ResidualReport {
    std::string name;
    TruncationWindow window;
    double residual = 0;  ///< max-entry residual on the valid block
    double scale = 0;     ///< max-entry magnitude of the reference on the valid block
};

/// Unit lower triangular, bandwidth (N, 0); row n holds A^{[n]}_{n-k}.
template <class Real>
BandMatrix<Real> build_Lmon(const ConnectionCoeffs<Real>& conn, std::size_t M);

/// h P_n = sum_{i=n}^{n+N} B_i P*_i with B_i = [h P_n, P*_i]_h / (h*_i)^2; bandwidth (0, N).
/// pstar_seq must reach degree M - 1. Throws QuasiDefinitenessError when B_n vanishes.
template <class Real>
BandMatrix<Real> build_Umon(const MonicOPS<Real>& base, const MonicOPS<Real>& pstar_seq, const FactoredNodes<Real>& h,
                            std::size_t M, const Tolerances& tol = {});

/// sum_m b_m J^m evaluated on the (M + N) section, cropped to M with bandwidth (N, N).
template <class Real>
BandMatrix<Real> h_of_jacobi(const JacobiMatrix<Real>& j, const FactoredNodes<Real>& h, std::size_t M);

/// Row n: c_k = [h P*_n, P*_k]_h / (h*_k)^2 for |k - n| <= N.
template <class Real>
BandMatrix<Real> jstar_band(const MonicOPS<Real>& pstar_seq, const FactoredNodes<Real>& h, std::size_t M);

/// Same quantities for every k < M, without the band assumption.
template <class Real>
Matrix<Real> jstar_full(const MonicOPS<Real>& pstar_seq, const FactoredNodes<Real>& h, std::size_t M);

/// ([h P^*_n, P^*_m]_h / (h*_n h*_m)), bandwidth (N, N). Requires positive norms.
template <class Real>
BandMatrix<Real> jstar_orthonormal(const MonicOPS<Real>& pstar_seq, const FactoredNodes<Real>& h, std::size_t M);

template <class Real>
ResidualReport verify_UL(const JacobiMatrix<Real>& j, const FactoredNodes<Real>& h, const BandMatrix<Real>& l,
                         const BandMatrix<Real>& u, const TruncationWindow& w);

template <class Real>
ResidualReport verify_LU(const BandMatrix<Real>& jstar, const BandMatrix<Real>& l, const BandMatrix<Real>& u,
                         const TruncationWindow& w);

/// C(n, n-k) = A^{[n]}_{n-k} h_{n-k} / h*_n for k = 0..N.
template <class Real>
BandMatrix<Real> cholesky_C(const ConnectionCoeffs<Real>& conn, const std::vector<Real>& base_norms2,
                            const std::vector<Real>& pstar_norms2, std::size_t M);

template <class Real>
ResidualReport verify_cholesky(const BandMatrix<Real>& jstar_on, const BandMatrix<Real>& c, const TruncationWindow& w);

/// Entrywise distance between C and the dense Cholesky factor of the truncated J*.
template <class Real>
ResidualReport cholesky_oracle(const BandMatrix<Real>& jstar_on, const BandMatrix<Real>& c, const TruncationWindow& w);

/// max_n |(h*_{n+N})^2 - A^{[n+N]}_n h_n^2| / (h*_{n+N})^2 over n + N < size.
template <class Real>
Real norm_identity_residual(const ConnectionCoeffs<Real>& conn, const std::vector<Real>& base_norms2,
                            const std::vector<Real>& pstar_norms2);

/// U_mon recovered as h(J) L^{-1} on the section; test oracle for build_Umon.
template <class Real>
Matrix<Real> umon_by_division(const BandMatrix<Real>& hj, const BandMatrix<Real>& l);

}  // namespace mgt
