#pragma once

// The multiple Geronimus transform proper. `base` is always the monic sequence P_n of
// the measure form of mu_0 = h mu; `form` is the Geronimus form [.,.]_h over mu.
// P*_n = P_n + sum_{k=1}^{min(n,N)} A^{[n]}_{n-k} P_{n-k}.

#include "mgt/orthopoly.hpp"

#include <optional>

namespace mgt {

template <class Real>
struct ConnectionCoeffs {
    std::size_t order = 0;                  ///< N
    std::vector<std::vector<Real>> rows;    ///< rows[n][k-1] = A^{[n]}_{n-k}, k = 1..min(n, N)
    std::vector<Real> dstar;                ///< d*_0 .. d*_{rows.size()}

    /// A^{[n]}_m with A^{[n]}_n = 1 and zero outside the stored band.
    Real A(std::size_t n, std::size_t m) const {
        if (m == n) return Real(1);
        if (m > n || n - m > rows.at(n).size()) return Real(0);
        return rows[n][n - m - 1];
    }
};

/// Coefficient matrix M(m, k) = [P_{n-1-k}, t^m]_h and right-hand side -[P_n, t^m]_h,
/// both of size r = min(n, N).
template <class Real>
struct ConnectionSystem {
    Matrix<Real> matrix;
    std::vector<Real> rhs;
};

template <class Real>
ConnectionSystem<Real> connection_system(const MonicOPS<Real>& base, const BilinearForm<Real>& form, std::size_t n);

/// d*_n = det M; d*_0 = 1.
template <class Real>
Real dstar(const MonicOPS<Real>& base, const BilinearForm<Real>& form, std::size_t n);

/// True when |det| is below tol relative to the product of the row 2-norms.
template <class Real>
bool determinant_vanishes(const Matrix<Real>& m, const Real& det, const Tolerances& tol = {});

/// (A^{[n]}_{n-1}, ..., A^{[n]}_{n-r}). Throws QuasiDefinitenessError when d*_n vanishes.
template <class Real>
std::vector<Real> connection_row(const MonicOPS<Real>& base, const BilinearForm<Real>& form, std::size_t n,
                                 const Tolerances& tol = {});

/// Rows 0..n_max and d*_0..d*_{n_max+1}; base must reach degree n_max.
template <class Real>
ConnectionCoeffs<Real> connection_coeffs(const MonicOPS<Real>& base, const BilinearForm<Real>& form,
                                         std::size_t n_max, const Tolerances& tol = {});

template <class Real>
Polynomial<Real> pstar(const MonicOPS<Real>& base, const ConnectionCoeffs<Real>& conn, std::size_t n);

/// P*_0..P*_{n_max} with norms2 = [P*_k, P*_k]_h.
template <class Real>
MonicOPS<Real> pstar_sequence(const MonicOPS<Real>& base, const BilinearForm<Real>& form,
                              const ConnectionCoeffs<Real>& conn);

/// Bordered-determinant formula: first column P_n, ..., P_{n-r}, remaining columns
/// [P_{n-i}, t^c]_h, expanded along the first column and divided by d*_n.
template <class Real>
Polynomial<Real> pstar_determinant(const MonicOPS<Real>& base, const BilinearForm<Real>& form, std::size_t n,
                                   const Tolerances& tol = {});

enum class Definiteness { positive_definite, indefinite, degenerate };

const char* to_string(Definiteness d);

template <class Real>
struct DefinitenessRow {
    std::size_t n = 0;
    Real d_n{0};
    Real d_next{0};
    Real ratio{0};              ///< d*_{n+1} / d*_n (0 when d*_n vanishes)
    bool nonzero = false;       ///< d*_{n+1} is not numerically zero
    bool sign_ok = false;       ///< the positivity condition for this n
    /// n >= N: [P*_n, t^m h^k]_h with n = m + Nk against (-1)^N ratio h_{n-N}^2.
    /// n < N: [P*_n, t^n]_h against (-1)^n ratio.
    std::optional<Real> identity_lhs;
    std::optional<Real> identity_rhs;
};

template <class Real>
struct DefinitenessReport {
    std::vector<DefinitenessRow<Real>> rows;  ///< n = 0..upto
    Definiteness verdict = Definiteness::degenerate;
    std::optional<std::size_t> first_failure;  ///< first n whose sign condition fails

    /// max relative mismatch of the identity over rows where both sides exist.
    Real identity_residual() const;
};

/// Sign conditions on d*_{n+1}/d*_n for n = 0..upto; base must reach degree upto.
template <class Real>
DefinitenessReport<Real> definiteness(const MonicOPS<Real>& base, const BilinearForm<Real>& form, std::size_t upto,
                                      const Tolerances& tol = {});

template <class Real>
struct ExistenceResult {
    bool solvable = false;
    double condition = 0;
    Matrix<Real> system;         ///< V = I + K Lambda
    Jet<Real> rhs;               ///< jet of R_n
    Jet<Real> jets;              ///< solved jet of P*_n (empty when not solvable)
    Polynomial<Real> pstar;      ///< R_n - sum jet_(l,i) D_{i,l}
};

/// Solve V jet(P*_n) = jet(R_n) with K(q k, w j) = K_{n-1}^{(j,k)}(a_w, a_q).
template <class Real>
ExistenceResult<Real> existence_system(const MonicOPS<Real>& r_ops, const SobolevMass<Real>& masses, std::size_t n,
                                       const Tolerances& tol = {});

template <class Real>
struct RConnection {
    std::vector<Real> coeffs;    ///< c_k, h P*_n = sum_{k <= n+N} c_k R_k
    Real scale{0};               ///< max |c_k|
    Real below_residual{0};      ///< max_{k < n-N} |c_k| / scale
    Real leading{0};             ///< c_{n+N}
    Real edge{0};                ///< c_{n-N} (0 when n < N)
    Real rel_residual{0};        ///< max_{k<n} |(P*_{n+N}, R_k)_0| / (||P*_{n+N}||_0 ||R_k||_0)
};

/// Projection of h P*_n onto the R basis; pstar_seq must reach degree n + N.
template <class Real>
RConnection<Real> connect_to_R(const MonicOPS<Real>& r_ops, const MonicOPS<Real>& pstar_seq,
                               const FactoredNodes<Real>& h, std::size_t n);

/// B_{n+N-m} = sum_{k=0}^{min(m,N)} b^{[n-k]}_{N+n-m} A^{[n]}_{n-k} for m = 0..2N,
/// returned by R index (entries below 0 dropped); b^{[j]}_i = (P_j, R_i)_0 / ||R_i||^2.
template <class Real>
std::vector<Real> closed_form_B(const MonicOPS<Real>& r_ops, const MonicOPS<Real>& base,
                                const ConnectionCoeffs<Real>& conn, const FactoredNodes<Real>& h, std::size_t n);

}  // namespace mgt
