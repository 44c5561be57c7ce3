#include "mgt/factor.hpp"

#include "mgt/kernels.hpp"

namespace mgt {

using kernels::Execution;

namespace {

template <class Real>
void require_degree(const MonicOPS<Real>& seq, std::size_t n) {
    if (seq.size() <= n) throw HorizonError(n, seq.size() - 1);
}

template <class Real>
ResidualReport make_report(std::string name, const TruncationWindow& w, const Matrix<Real>& ref,
                           const Matrix<Real>& other) {
    const std::size_t v = std::min({w.valid(), ref.rows(), other.rows()});
    Real diff(0);
    Real scale(0);
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = 0; j < v; ++j) {
            diff = std::max(diff, real_abs(ref(i, j) - other(i, j)));
            scale = std::max(scale, real_abs(ref(i, j)));
        }
    return {std::move(name), w, to_double(diff), to_double(scale)};
}

}  // namespace

template <class Real>
BandMatrix<Real> build_Lmon(const ConnectionCoeffs<Real>& conn, std::size_t M) {
    if (conn.rows.size() < M) throw HorizonError(M - 1, conn.rows.size() - 1);
    BandMatrix<Real> l(M, conn.order, 0);
    for (std::size_t n = 0; n < M; ++n)
        for (std::size_t j = l.row_begin(n); j <= n; ++j) l.at(n, j) = conn.A(n, j);
    return l;
}

template <class Real>
BandMatrix<Real> build_Umon(const MonicOPS<Real>& base, const MonicOPS<Real>& pstar_seq, const FactoredNodes<Real>& h,
                            std::size_t M, const Tolerances& tol) {
    const std::size_t big_n = h.order();
    require_degree(base, M - 1);
    require_degree(pstar_seq, M - 1);
    const auto& form = pstar_seq.form;
    BandMatrix<Real> u(M, 0, big_n);
    const Real thresh = scaled_tolerance<Real>(tol.nonzero);
    kernels::for_each_index<Real>(
        M,
        [&](std::size_t n) {
            const auto hp = h.expanded() * base[n];
            Real scale(1);  // B_{n+N} = 1
            // The N-th superdiagonal is 1 exactly: h P_n and P*_{n+N} are both monic of degree n+N.
            for (std::size_t i = n; i < u.row_end(n); ++i) {
                u.at(n, i) = i == n + big_n ? Real(1) : form.inner(hp, pstar_seq[i]) / pstar_seq.norms2[i];
                scale = std::max(scale, real_abs(u(n, i)));
            }
            if (real_abs(u(n, n)) <= thresh * scale)
                throw QuasiDefinitenessError(n, "leading projection B_n of h P_n vanishes");
        },
        Execution::parallel);
    return u;
}

template <class Real>
BandMatrix<Real> h_of_jacobi(const JacobiMatrix<Real>& j, const FactoredNodes<Real>& h, std::size_t M) {
    const std::size_t big_n = h.order();
    const std::size_t padded = M + big_n;
    if (j.size() < padded) throw HorizonError(padded, j.size());
    const auto jm = j.monic(padded);
    const auto& b = h.expanded();
    BandMatrix<Real> power(padded, 0, 0);
    for (std::size_t i = 0; i < padded; ++i) power.at(i, i) = Real(1);
    BandMatrix<Real> acc = b.coeff(0) * power;
    for (std::size_t m = 1; m <= big_n; ++m) {
        power = kernels::multiply(power, jm, Execution::parallel);
        acc = acc + b.coeff(m) * power;
    }
    BandMatrix<Real> out(M, big_n, big_n);
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t k = out.row_begin(i); k < out.row_end(i); ++k) out.at(i, k) = acc(i, k);
    return out;
}

template <class Real>
BandMatrix<Real> jstar_band(const MonicOPS<Real>& pstar_seq, const FactoredNodes<Real>& h, std::size_t M) {
    require_degree(pstar_seq, M - 1);
    const std::size_t big_n = h.order();
    BandMatrix<Real> c(M, big_n, big_n);
    kernels::for_each_index<Real>(
        M,
        [&](std::size_t n) {
            const auto hp = h.expanded() * pstar_seq[n];
            for (std::size_t k = c.row_begin(n); k < c.row_end(n); ++k)
                c.at(n, k) = k == n + big_n ? Real(1) : pstar_seq.form.inner(hp, pstar_seq[k]) / pstar_seq.norms2[k];
        },
        Execution::parallel);
    return c;
}

template <class Real>
Matrix<Real> jstar_full(const MonicOPS<Real>& pstar_seq, const FactoredNodes<Real>& h, std::size_t M) {
    require_degree(pstar_seq, M - 1);
    std::vector<Polynomial<Real>> lhs;
    std::vector<Polynomial<Real>> rhs(pstar_seq.polys.begin(), pstar_seq.polys.begin() + static_cast<long>(M));
    for (std::size_t n = 0; n < M; ++n) lhs.push_back(h.expanded() * pstar_seq[n]);
    auto t = kernels::inner_table(pstar_seq.form, lhs, rhs, Execution::parallel);
    for (std::size_t n = 0; n < M; ++n)
        for (std::size_t k = 0; k < M; ++k) t(n, k) /= pstar_seq.norms2[k];
    return t;
}

template <class Real>
BandMatrix<Real> jstar_orthonormal(const MonicOPS<Real>& pstar_seq, const FactoredNodes<Real>& h, std::size_t M) {
    require_degree(pstar_seq, M - 1);
    std::vector<Real> nrm(M);
    for (std::size_t n = 0; n < M; ++n) nrm[n] = pstar_seq.norm(n);
    const std::size_t big_n = h.order();
    BandMatrix<Real> c(M, big_n, big_n);
    kernels::for_each_index<Real>(
        M,
        [&](std::size_t n) {
            const auto hp = h.expanded() * pstar_seq[n];
            for (std::size_t k = c.row_begin(n); k < c.row_end(n); ++k)
                c.at(n, k) = pstar_seq.form.inner(hp, pstar_seq[k]) / (nrm[n] * nrm[k]);
        },
        Execution::parallel);
    return c;
}

template <class Real>
ResidualReport verify_UL(const JacobiMatrix<Real>& j, const FactoredNodes<Real>& h, const BandMatrix<Real>& l,
                         const BandMatrix<Real>& u, const TruncationWindow& w) {
    const auto hj = h_of_jacobi(j, h, w.M);
    const auto ul = kernels::multiply(u, l, Execution::parallel);
    return make_report("h(J_mon) - U_mon L_mon", w, hj.dense(), ul.dense());
}

template <class Real>
ResidualReport verify_LU(const BandMatrix<Real>& jstar, const BandMatrix<Real>& l, const BandMatrix<Real>& u,
                         const TruncationWindow& w) {
    const auto lu = kernels::multiply(l, u, Execution::parallel);
    return make_report("J*_mon - L_mon U_mon", w, jstar.dense(), lu.dense());
}

template <class Real>
BandMatrix<Real> cholesky_C(const ConnectionCoeffs<Real>& conn, const std::vector<Real>& base_norms2,
                            const std::vector<Real>& pstar_norms2, std::size_t M) {
    if (conn.rows.size() < M || base_norms2.size() < M || pstar_norms2.size() < M)
        throw HorizonError(M - 1, std::min({conn.rows.size(), base_norms2.size(), pstar_norms2.size()}) - 1);
    BandMatrix<Real> c(M, conn.order, 0);
    for (std::size_t n = 0; n < M; ++n) {
        if (!(pstar_norms2[n] > Real(0))) throw PositivityError(n, "(h*_n)^2 is not positive");
        const Real hs = real_sqrt(pstar_norms2[n]);
        for (std::size_t m = c.row_begin(n); m <= n; ++m) {
            if (!(base_norms2[m] > Real(0))) throw PositivityError(m, "h_n^2 is not positive");
            c.at(n, m) = conn.A(n, m) * real_sqrt(base_norms2[m]) / hs;
        }
    }
    return c;
}

template <class Real>
ResidualReport verify_cholesky(const BandMatrix<Real>& jstar_on, const BandMatrix<Real>& c, const TruncationWindow& w) {
    const auto cd = c.dense();
    return make_report("J* - C C^T", w, jstar_on.dense(), cd * cd.transpose());
}

template <class Real>
ResidualReport cholesky_oracle(const BandMatrix<Real>& jstar_on, const BandMatrix<Real>& c, const TruncationWindow& w) {
    const auto dense = cholesky(jstar_on.dense());
    if (!dense) throw PositivityError(0, "truncated J* is not positive definite");
    return make_report("C - chol(J*)", w, *dense, c.dense());
}

template <class Real>
Real norm_identity_residual(const ConnectionCoeffs<Real>& conn, const std::vector<Real>& base_norms2,
                            const std::vector<Real>& pstar_norms2) {
    const std::size_t big_n = conn.order;
    const std::size_t limit = std::min({conn.rows.size(), pstar_norms2.size(), base_norms2.size() + big_n});
    Real worst(0);
    for (std::size_t n = 0; n + big_n < limit; ++n) {
        const Real lhs = pstar_norms2[n + big_n];
        const Real rhs = conn.A(n + big_n, n) * base_norms2[n];
        worst = std::max(worst, real_abs(lhs - rhs) / real_abs(lhs));
    }
    return worst;
}

template <class Real>
Matrix<Real> umon_by_division(const BandMatrix<Real>& hj, const BandMatrix<Real>& l) {
    return hj.dense() * unit_lower_inverse(l.dense());
}

#define MGT_INSTANTIATE(R)                                                                                      \
    template BandMatrix<R> build_Lmon(const ConnectionCoeffs<R>&, std::size_t);                                 \
    template BandMatrix<R> build_Umon(const MonicOPS<R>&, const MonicOPS<R>&, const FactoredNodes<R>&,          \
                                      std::size_t, const Tolerances&);                                          \
    template BandMatrix<R> h_of_jacobi(const JacobiMatrix<R>&, const FactoredNodes<R>&, std::size_t);           \
    template BandMatrix<R> jstar_band(const MonicOPS<R>&, const FactoredNodes<R>&, std::size_t);                \
    template Matrix<R> jstar_full(const MonicOPS<R>&, const FactoredNodes<R>&, std::size_t);                    \
    template BandMatrix<R> jstar_orthonormal(const MonicOPS<R>&, const FactoredNodes<R>&, std::size_t);         \
    template ResidualReport verify_UL(const JacobiMatrix<R>&, const FactoredNodes<R>&, const BandMatrix<R>&,    \
                                      const BandMatrix<R>&, const TruncationWindow&);                           \
    template ResidualReport verify_LU(const BandMatrix<R>&, const BandMatrix<R>&, const BandMatrix<R>&,         \
                                      const TruncationWindow&);                                                 \
    template BandMatrix<R> cholesky_C(const ConnectionCoeffs<R>&, const std::vector<R>&, const std::vector<R>&, \
                                      std::size_t);                                                             \
    template ResidualReport verify_cholesky(const BandMatrix<R>&, const BandMatrix<R>&, const TruncationWindow&); \
    template ResidualReport cholesky_oracle(const BandMatrix<R>&, const BandMatrix<R>&, const TruncationWindow&); \
    template R norm_identity_residual(const ConnectionCoeffs<R>&, const std::vector<R>&, const std::vector<R>&); \
    template Matrix<R> umon_by_division(const BandMatrix<R>&, const BandMatrix<R>&);

MGT_INSTANTIATE(double)
MGT_INSTANTIATE(HpReal)

}  // namespace mgt
