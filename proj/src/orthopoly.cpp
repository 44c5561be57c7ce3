#include "mgt/orthopoly.hpp"

#include "mgt/kernels.hpp"

namespace mgt {

template <class Real>
Real MonicOPS<Real>::norm(std::size_t k) const {
    if (!(norms2.at(k) > Real(0))) throw PositivityError(k, "squared norm is not positive");
    return real_sqrt(norms2[k]);
}

template <class Real>
MonicOPS<Real> monic_ops_from_form(const BilinearForm<Real>& form, std::size_t n, const Tolerances& tol) {
    const auto g = form.gram(n);
    const auto f = ldl(g, scaled_tolerance<Real>(tol.pivot));
    if (f.failed_at) throw QuasiDefinitenessError(*f.failed_at, "Gram pivot vanishes");
    const auto inv = unit_lower_inverse(f.unit_lower);
    MonicOPS<Real> ops{{}, f.diag, form};
    ops.polys.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<Real> c(k + 1);
        for (std::size_t j = 0; j <= k; ++j) c[j] = inv(k, j);
        ops.polys.emplace_back(std::move(c));
    }
    return ops;
}

template <class Real>
MonicOPS<Real> gs_oracle(const BilinearForm<Real>& form, std::size_t n, const Tolerances& tol) {
    MonicOPS<Real> ops{{}, {}, form};
    const Real thresh = scaled_tolerance<Real>(tol.pivot);
    for (std::size_t k = 0; k <= n; ++k) {
        const auto tk = Polynomial<Real>::monomial(k);
        Polynomial<Real> p = tk;
        for (std::size_t j = 0; j < k; ++j) p -= (form.inner(tk, ops.polys[j]) / ops.norms2[j]) * ops.polys[j];
        const Real nrm = form.inner(p, p);
        if (real_abs(nrm) <= thresh * real_abs(form.inner(tk, tk)))
            throw QuasiDefinitenessError(k, "Gram-Schmidt norm vanishes");
        ops.polys.push_back(std::move(p));
        ops.norms2.push_back(nrm);
    }
    return ops;
}

template <class Real>
BandMatrix<Real> JacobiMatrix<Real>::monic(std::size_t m) const {
    if (m > size()) throw HorizonError(m, size());
    BandMatrix<Real> b(m, 1, 1);
    for (std::size_t n = 0; n < m; ++n) {
        b.at(n, n) = diag[n];
        if (n + 1 < m) b.at(n, n + 1) = Real(1);
        if (n > 0) b.at(n, n - 1) = sub[n - 1];
    }
    return b;
}

template <class Real>
BandMatrix<Real> JacobiMatrix<Real>::orthonormal(std::size_t m) const {
    if (m > size()) throw HorizonError(m, size());
    BandMatrix<Real> b(m, 1, 1);
    for (std::size_t n = 0; n < m; ++n) {
        b.at(n, n) = diag[n];
        if (n > 0) {
            if (sub[n - 1] < Real(0)) throw PositivityError(n, "recurrence coefficient C_n is negative");
            b.at(n, n - 1) = b.at(n - 1, n) = real_sqrt(sub[n - 1]);
        }
    }
    return b;
}

template <class Real>
JacobiMatrix<Real> jacobi(const MonicOPS<Real>& ops) {
    if (ops.form.kind() != FormKind::measure)
        throw ValidationError("three-term recurrence needs a measure form");
    if (ops.size() < 2) throw ValidationError("recurrence needs at least P_0 and P_1");
    JacobiMatrix<Real> j;
    const auto t = Polynomial<Real>::monomial(1);
    for (std::size_t n = 0; n + 1 < ops.size(); ++n) {
        j.diag.push_back(ops.form.inner(t * ops.polys[n], ops.polys[n]) / ops.norms2[n]);
        if (n > 0) j.sub.push_back(ops.norms2[n] / ops.norms2[n - 1]);
    }
    return j;
}

template <class Real>
std::vector<Polynomial<Real>> recurrence_polys(const JacobiMatrix<Real>& j, std::size_t n) {
    if (n > j.size()) throw HorizonError(n, j.size());
    std::vector<Polynomial<Real>> p{Polynomial<Real>::constant(Real(1))};
    const auto t = Polynomial<Real>::monomial(1);
    for (std::size_t k = 0; k < n; ++k) {
        auto next = (t - Polynomial<Real>::constant(j.diag[k])) * p[k];
        if (k > 0) next -= j.sub[k - 1] * p[k - 1];
        p.push_back(std::move(next));
    }
    return p;
}

template <class Real>
Real kernel(const MonicOPS<Real>& ops, std::size_t n, const Real& x, const Real& y) {
    return kernel_deriv(ops, n, 0, 0, x, y);
}

template <class Real>
Real kernel_deriv(const MonicOPS<Real>& ops, std::size_t n, unsigned i, unsigned j, const Real& x, const Real& y) {
    if (n >= ops.size()) throw HorizonError(n, ops.size() - 1);
    Real s(0);
    for (std::size_t k = 0; k <= n; ++k)
        s += ops.polys[k].derivative(i)(x) * ops.polys[k].derivative(j)(y) / ops.norms2[k];
    return s;
}

template <class Real>
Polynomial<Real> kernel_poly(const MonicOPS<Real>& ops, std::size_t n, unsigned j, const Real& x) {
    if (n >= ops.size()) throw HorizonError(n, ops.size() - 1);
    Polynomial<Real> s;
    for (std::size_t k = 0; k <= n; ++k) s += (ops.polys[k].derivative(j)(x) / ops.norms2[k]) * ops.polys[k];
    return s;
}

template <class Real>
Real christoffel_darboux(const MonicOPS<Real>& ops, std::size_t n, const Real& x, const Real& y) {
    if (n + 1 >= ops.size()) throw HorizonError(n + 1, ops.size() - 1);
    const auto& p = ops.polys;
    return (p[n + 1](x) * p[n](y) - p[n](x) * p[n + 1](y)) / ((x - y) * ops.norms2[n]);
}

template <class Real>
Real orthogonality_residual(const MonicOPS<Real>& ops) {
    const auto t = kernels::inner_table(ops.form, ops.polys, ops.polys, kernels::Execution::parallel);
    Real worst(0);
    for (std::size_t i = 0; i < ops.size(); ++i)
        for (std::size_t j = 0; j < ops.size(); ++j)
            if (i != j) worst = std::max(worst, real_abs(t(i, j)) / real_sqrt(real_abs(ops.norms2[i] * ops.norms2[j])));
    return worst;
}

#define MGT_INSTANTIATE(R)                                                                           \
    template struct MonicOPS<R>;                                                                     \
    template MonicOPS<R> monic_ops_from_form(const BilinearForm<R>&, std::size_t, const Tolerances&); \
    template MonicOPS<R> gs_oracle(const BilinearForm<R>&, std::size_t, const Tolerances&);          \
    template struct JacobiMatrix<R>;                                                                 \
    template JacobiMatrix<R> jacobi(const MonicOPS<R>&);                                             \
    template std::vector<Polynomial<R>> recurrence_polys(const JacobiMatrix<R>&, std::size_t);       \
    template R kernel(const MonicOPS<R>&, std::size_t, const R&, const R&);                          \
    template R kernel_deriv(const MonicOPS<R>&, std::size_t, unsigned, unsigned, const R&, const R&); \
    template Polynomial<R> kernel_poly(const MonicOPS<R>&, std::size_t, unsigned, const R&);         \
    template R christoffel_darboux(const MonicOPS<R>&, std::size_t, const R&, const R&);             \
    template R orthogonality_residual(const MonicOPS<R>&);

MGT_INSTANTIATE(double)
MGT_INSTANTIATE(HpReal)

}  // namespace mgt
