#pragma once

// Monic orthogonal sequences of a quasi-definite form, Jacobi data and the
// reproducing kernel.

#include "mgt/band.hpp"
#include "mgt/forms.hpp"

namespace mgt {

template <class Real>
struct MonicOPS {
    std::vector<Polynomial<Real>> polys;  ///< P_0..P_n, P_k monic of degree k
    std::vector<Real> norms2;             ///< inner(P_k, P_k)
    BilinearForm<Real> form;

    std::size_t size() const { return polys.size(); }
    const Polynomial<Real>& operator[](std::size_t k) const { return polys.at(k); }
    /// Positive square root of norms2[k]; throws PositivityError when norms2[k] <= 0.
    Real norm(std::size_t k) const;
};

/// LDL^T of gram(form, n): row k of L^{-1} holds the coefficients of P_k, D_kk = h_k^2.
/// Throws QuasiDefinitenessError carrying the first failing index.
template <class Real>
MonicOPS<Real> monic_ops_from_form(const BilinearForm<Real>& form, std::size_t n, const Tolerances& tol = {});

/// Classical Gram-Schmidt on 1, t, t^2, ... using form.inner only.
template <class Real>
MonicOPS<Real> gs_oracle(const BilinearForm<Real>& form, std::size_t n, const Tolerances& tol = {});

/// t P_n = P_{n+1} + D_n P_n + C_n P_{n-1}.
template <class Real>
struct JacobiMatrix {
    std::vector<Real> diag;  ///< D_0..D_{M-1}
    std::vector<Real> sub;   ///< C_1..C_{M-1} stored at index n-1

    std::size_t size() const { return diag.size(); }
    /// Monic J_mon section: (n, n) = D_n, (n, n+1) = 1, (n, n-1) = C_n.
    BandMatrix<Real> monic(std::size_t m) const;
    /// Symmetric orthonormal section with off-diagonal sqrt(C_n).
    BandMatrix<Real> orthonormal(std::size_t m) const;
};

/// Recurrence data for degrees < ops.size() - 1. Requires a measure form.
template <class Real>
JacobiMatrix<Real> jacobi(const MonicOPS<Real>& ops);

/// P_{n+1} = (t - D_n) P_n - C_n P_{n-1}, started from P_0 = 1.
template <class Real>
std::vector<Polynomial<Real>> recurrence_polys(const JacobiMatrix<Real>& j, std::size_t n);

/// K_n(x, y) = sum_{k<=n} P_k(x) P_k(y) / h_k^2.
template <class Real>
Real kernel(const MonicOPS<Real>& ops, std::size_t n, const Real& x, const Real& y);

/// d^i/dx^i d^j/dy^j K_n(x, y), termwise.
template <class Real>
Real kernel_deriv(const MonicOPS<Real>& ops, std::size_t n, unsigned i, unsigned j, const Real& x, const Real& y);

/// t -> K_n^{(j,0)}(x, t) as a polynomial in t.
template <class Real>
Polynomial<Real> kernel_poly(const MonicOPS<Real>& ops, std::size_t n, unsigned j, const Real& x);

/// (P_{n+1}(x) P_n(y) - P_n(x) P_{n+1}(y)) / ((x - y) h_n^2), x != y.
template <class Real>
Real christoffel_darboux(const MonicOPS<Real>& ops, std::size_t n, const Real& x, const Real& y);

/// max_{i != j} |inner(P_i, P_j)| / sqrt|h_i^2 h_j^2|.
template <class Real>
Real orthogonality_residual(const MonicOPS<Real>& ops);

}  // namespace mgt
