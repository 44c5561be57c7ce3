#include "mgt/geronimus.hpp"

#include "mgt/kernels.hpp"

namespace mgt {

namespace {

template <class Real>
void require_base(const MonicOPS<Real>& base, std::size_t n) {
    if (base.size() <= n) throw HorizonError(n, base.size() - 1);
}

template <class Real>
const FactoredNodes<Real>& nodes_of(const BilinearForm<Real>& form) {
    if (!form.params()) throw ValidationError("expected a Geronimus form");
    return form.params()->h;
}

template <class Real>
Polynomial<Real> combine(const MonicOPS<Real>& base, std::size_t n, const std::vector<Real>& row) {
    Polynomial<Real> p = base[n];
    for (std::size_t k = 1; k <= row.size(); ++k) p += row[k - 1] * base[n - k];
    return p;
}

}  // namespace

template <class Real>
ConnectionSystem<Real> connection_system(const MonicOPS<Real>& base, const BilinearForm<Real>& form, std::size_t n) {
    require_base(base, n);
    const std::size_t r = std::min(n, nodes_of(form).order());
    ConnectionSystem<Real> s{Matrix<Real>(r, r), std::vector<Real>(r)};
    for (std::size_t m = 0; m < r; ++m) {
        const auto tm = Polynomial<Real>::monomial(m);
        for (std::size_t k = 0; k < r; ++k) s.matrix(m, k) = form.inner(base[n - 1 - k], tm);
        s.rhs[m] = -form.inner(base[n], tm);
    }
    return s;
}

template <class Real>
Real dstar(const MonicOPS<Real>& base, const BilinearForm<Real>& form, std::size_t n) {
    if (n == 0) return Real(1);
    return determinant(connection_system(base, form, n).matrix);
}

template <class Real>
bool determinant_vanishes(const Matrix<Real>& m, const Real& det, const Tolerances& tol) {
    Real bound(1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Real s(0);
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
        bound *= real_sqrt(s);
    }
    return real_abs(det) <= scaled_tolerance<Real>(tol.nonzero) * bound;
}

template <class Real>
std::vector<Real> connection_row(const MonicOPS<Real>& base, const BilinearForm<Real>& form, std::size_t n,
                                 const Tolerances& tol) {
    const auto s = connection_system(base, form, n);
    if (s.rhs.empty()) return {};
    LuDecomposition<Real> lu(s.matrix);
    if (lu.singular() || determinant_vanishes(s.matrix, lu.determinant(), tol))
        throw QuasiDefinitenessError(n, "connection determinant d*_n vanishes");
    return lu.solve(s.rhs);
}

template <class Real>
ConnectionCoeffs<Real> connection_coeffs(const MonicOPS<Real>& base, const BilinearForm<Real>& form,
                                         std::size_t n_max, const Tolerances& tol) {
    require_base(base, n_max);
    ConnectionCoeffs<Real> c;
    c.order = nodes_of(form).order();
    c.rows.resize(n_max + 1);
    c.dstar.resize(n_max + 2);
    kernels::for_each_index<Real>(
        n_max + 2,
        [&](std::size_t n) {
            c.dstar[n] = dstar(base, form, n);
            if (n <= n_max) c.rows[n] = connection_row(base, form, n, tol);
        },
        kernels::Execution::parallel);
    return c;
}

template <class Real>
Polynomial<Real> pstar(const MonicOPS<Real>& base, const ConnectionCoeffs<Real>& conn, std::size_t n) {
    require_base(base, n);
    return combine(base, n, conn.rows.at(n));
}

template <class Real>
MonicOPS<Real> pstar_sequence(const MonicOPS<Real>& base, const BilinearForm<Real>& form,
                              const ConnectionCoeffs<Real>& conn) {
    MonicOPS<Real> out{{}, {}, form};
    for (std::size_t n = 0; n < conn.rows.size(); ++n) out.polys.push_back(pstar(base, conn, n));
    out.norms2.resize(out.polys.size());
    kernels::for_each_index<Real>(
        out.polys.size(), [&](std::size_t n) { out.norms2[n] = form.inner(out.polys[n], out.polys[n]); },
        kernels::Execution::parallel);
    return out;
}

template <class Real>
Polynomial<Real> pstar_determinant(const MonicOPS<Real>& base, const BilinearForm<Real>& form, std::size_t n,
                                   const Tolerances& tol) {
    require_base(base, n);
    const std::size_t r = std::min(n, nodes_of(form).order());
    // rows i = 0..r hold P_{n-i}; numeric columns c = 0..r-1 hold [P_{n-i}, t^c]_h
    Matrix<Real> g(r + 1, r);
    for (std::size_t i = 0; i <= r; ++i)
        for (std::size_t c = 0; c < r; ++c) g(i, c) = form.inner(base[n - i], Polynomial<Real>::monomial(c));
    auto minor = [&](std::size_t skip) {
        Matrix<Real> m(r, r);
        for (std::size_t i = 0, row = 0; i <= r; ++i) {
            if (i == skip) continue;
            for (std::size_t c = 0; c < r; ++c) m(row, c) = g(i, c);
            ++row;
        }
        return m;
    };
    const auto m0 = minor(0);
    const Real d = determinant(m0);
    if (determinant_vanishes(m0, d, tol)) throw QuasiDefinitenessError(n, "connection determinant d*_n vanishes");
    Polynomial<Real> p;
    for (std::size_t i = 0; i <= r; ++i) {
        const Real sign = i % 2 == 0 ? Real(1) : Real(-1);
        p += (sign * determinant(minor(i)) / d) * base[n - i];
    }
    return p;
}

const char* to_string(Definiteness d) {
    switch (d) {
        case Definiteness::positive_definite: return "positive_definite";
        case Definiteness::indefinite: return "indefinite";
        case Definiteness::degenerate: return "degenerate";
    }
    return "unknown";
}

template <class Real>
Real DefinitenessReport<Real>::identity_residual() const {
    Real worst(0);
    for (const auto& r : rows) {
        if (!r.identity_lhs || !r.identity_rhs) continue;
        const Real scale = std::max(real_abs(*r.identity_rhs), real_abs(*r.identity_lhs));
        if (scale > Real(0)) worst = std::max(worst, real_abs(*r.identity_lhs - *r.identity_rhs) / scale);
    }
    return worst;
}

template <class Real>
DefinitenessReport<Real> definiteness(const MonicOPS<Real>& base, const BilinearForm<Real>& form, std::size_t upto,
                                      const Tolerances& tol) {
    require_base(base, upto);
    const auto& h = nodes_of(form);
    const std::size_t big_n = h.order();
    std::vector<Real> d(upto + 2);
    std::vector<char> zero(upto + 2, 0);  // written concurrently
    std::vector<std::optional<Polynomial<Real>>> p(upto + 1);
    kernels::for_each_index<Real>(
        upto + 2,
        [&](std::size_t n) {
            ConnectionSystem<Real> s;
            if (n == 0) {
                d[0] = Real(1);
            } else {
                s = connection_system(base, form, n);
                d[n] = determinant(s.matrix);
                zero[n] = determinant_vanishes(s.matrix, d[n], tol);
            }
            if (n <= upto && !zero[n])
                p[n] = combine(base, n, n == 0 ? std::vector<Real>{} : LuDecomposition<Real>(s.matrix).solve(s.rhs));
        },
        kernels::Execution::parallel);

    DefinitenessReport<Real> rep;
    bool degenerate = false;
    for (std::size_t n = 0; n <= upto; ++n) {
        DefinitenessRow<Real> row;
        row.n = n;
        row.d_n = d[n];
        row.d_next = d[n + 1];
        row.nonzero = !zero[n + 1];
        degenerate = degenerate || zero[n + 1];
        if (!zero[n]) row.ratio = d[n + 1] / d[n];
        const int parity = n >= big_n ? static_cast<int>(big_n % 2) : static_cast<int>(n % 2);
        const Real signed_ratio = parity ? -row.ratio : row.ratio;
        // The condition is (h*_n)^2 > 0. With a positive mu_0 the factor h_{n-N}^2 is positive
        // and drops out; a signed mu_0 (roots of h inside the support) keeps its sign.
        const bool base_negative = n >= big_n && base.norms2[n - big_n] < Real(0);
        row.sign_ok = !zero[n] && row.nonzero && (base_negative ? signed_ratio < Real(0) : signed_ratio > Real(0));
        if (p[n] && !zero[n]) {
            if (n >= big_n) {
                const std::size_t k = n / big_n;
                const std::size_t m = n % big_n;
                Polynomial<Real> test = Polynomial<Real>::monomial(m);
                for (std::size_t i = 0; i < k; ++i) test = test * h.expanded();
                row.identity_lhs = form.inner(*p[n], test);
                row.identity_rhs = signed_ratio * base.norms2[n - big_n];
            } else {
                row.identity_lhs = form.inner(*p[n], Polynomial<Real>::monomial(n));
                row.identity_rhs = signed_ratio;
            }
        }
        if (!row.sign_ok && !rep.first_failure) rep.first_failure = n;
        rep.rows.push_back(std::move(row));
    }
    if (degenerate)
        rep.verdict = Definiteness::degenerate;
    else
        rep.verdict = rep.first_failure ? Definiteness::indefinite : Definiteness::positive_definite;
    return rep;
}

template <class Real>
ExistenceResult<Real> existence_system(const MonicOPS<Real>& r_ops, const SobolevMass<Real>& masses, std::size_t n,
                                       const Tolerances& tol) {
    require_base(r_ops, n);
    const auto& h = masses.nodes();
    const std::size_t big_n = h.order();
    struct Slot {
        std::size_t node;
        unsigned deriv;
    };
    std::vector<Slot> slots;
    for (std::size_t l = 0; l < h.distinct(); ++l)
        for (unsigned i = 0; i < h.nodes()[l].multiplicity; ++i) slots.push_back({l, i});

    Matrix<Real> kmat(big_n, big_n);
    if (n > 0)
        for (std::size_t a = 0; a < big_n; ++a)
            for (std::size_t b = 0; b < big_n; ++b)
                kmat(a, b) = kernel_deriv(r_ops, n - 1, slots[b].deriv, slots[a].deriv, h.nodes()[slots[b].node].root,
                                          h.nodes()[slots[a].node].root);

    ExistenceResult<Real> res;
    res.system = Matrix<Real>::identity(big_n) + kmat * masses.lambda();
    res.rhs = jet(r_ops[n], h);
    res.condition = condition_number(res.system);
    const double limit = 1.0 / to_double(scaled_tolerance<Real>(tol.singular_rcond));
    LuDecomposition<Real> lu(res.system);
    res.solvable = !lu.singular() && res.condition < limit;
    if (!res.solvable) return res;
    res.jets = lu.solve(res.rhs);

    res.pstar = r_ops[n];
    if (n > 0) {
        std::vector<Polynomial<Real>> kp(big_n);
        for (std::size_t b = 0; b < big_n; ++b)
            kp[b] = kernel_poly(r_ops, n - 1, slots[b].deriv, h.nodes()[slots[b].node].root);
        for (std::size_t a = 0; a < big_n; ++a) {
            Polynomial<Real> dil;  // D_{i,l} for (l, i) = slots[a]
            for (std::size_t b = 0; b < big_n; ++b) dil += masses.lambda()(a, b) * kp[b];
            res.pstar -= res.jets[a] * dil;
        }
    }
    return res;
}

template <class Real>
RConnection<Real> connect_to_R(const MonicOPS<Real>& r_ops, const MonicOPS<Real>& pstar_seq,
                               const FactoredNodes<Real>& h, std::size_t n) {
    const std::size_t big_n = h.order();
    require_base(r_ops, n + big_n);
    require_base(pstar_seq, n + big_n);
    const auto& mu = r_ops.form.mu();
    const auto hp = h.expanded() * pstar_seq[n];

    RConnection<Real> out;
    out.coeffs.resize(n + big_n + 1);
    for (std::size_t k = 0; k <= n + big_n; ++k) out.coeffs[k] = measure_inner(mu, hp, r_ops[k]) / r_ops.norms2[k];
    for (const auto& c : out.coeffs) out.scale = std::max(out.scale, real_abs(c));
    for (std::size_t k = 0; k + big_n < n; ++k)
        out.below_residual = std::max(out.below_residual, real_abs(out.coeffs[k]) / out.scale);
    out.leading = out.coeffs[n + big_n];
    out.edge = n >= big_n ? out.coeffs[n - big_n] : Real(0);

    const auto& top = pstar_seq[n + big_n];
    const auto htop = h.expanded() * top;
    const Real top_norm = real_sqrt(real_abs(measure_inner(mu, htop, top)));
    for (std::size_t k = 0; k < n; ++k) {
        const Real rk_norm = real_sqrt(real_abs(measure_inner(mu, h.expanded() * r_ops[k], r_ops[k])));
        out.rel_residual =
            std::max(out.rel_residual, real_abs(measure_inner(mu, htop, r_ops[k])) / (top_norm * rk_norm));
    }
    return out;
}

template <class Real>
std::vector<Real> closed_form_B(const MonicOPS<Real>& r_ops, const MonicOPS<Real>& base,
                                const ConnectionCoeffs<Real>& conn, const FactoredNodes<Real>& h, std::size_t n) {
    const std::size_t big_n = h.order();
    require_base(r_ops, n + big_n);
    const auto& mu = r_ops.form.mu();
    auto b = [&](std::size_t j, std::size_t i) {
        return measure_inner(mu, h.expanded() * base[j], r_ops[i]) / r_ops.norms2[i];
    };
    std::vector<Real> out(n + big_n + 1, Real(0));
    for (std::size_t m = 0; m <= 2 * big_n && m <= n + big_n; ++m) {
        const std::size_t idx = n + big_n - m;
        Real s(0);
        for (std::size_t k = 0; k <= std::min(m, big_n) && k <= n; ++k)
            if (idx <= n - k + big_n) s += b(n - k, idx) * conn.A(n, n - k);
        out[idx] = s;
    }
    return out;
}

#define MGT_INSTANTIATE(R)                                                                                      \
    template ConnectionSystem<R> connection_system(const MonicOPS<R>&, const BilinearForm<R>&, std::size_t);    \
    template R dstar(const MonicOPS<R>&, const BilinearForm<R>&, std::size_t);                                  \
    template bool determinant_vanishes(const Matrix<R>&, const R&, const Tolerances&);                          \
    template std::vector<R> connection_row(const MonicOPS<R>&, const BilinearForm<R>&, std::size_t,             \
                                           const Tolerances&);                                                  \
    template ConnectionCoeffs<R> connection_coeffs(const MonicOPS<R>&, const BilinearForm<R>&, std::size_t,     \
                                                   const Tolerances&);                                          \
    template Polynomial<R> pstar(const MonicOPS<R>&, const ConnectionCoeffs<R>&, std::size_t);                  \
    template MonicOPS<R> pstar_sequence(const MonicOPS<R>&, const BilinearForm<R>&, const ConnectionCoeffs<R>&); \
    template Polynomial<R> pstar_determinant(const MonicOPS<R>&, const BilinearForm<R>&, std::size_t,           \
                                             const Tolerances&);                                                \
    template struct DefinitenessReport<R>;                                                                      \
    template DefinitenessReport<R> definiteness(const MonicOPS<R>&, const BilinearForm<R>&, std::size_t,        \
                                                const Tolerances&);                                             \
    template ExistenceResult<R> existence_system(const MonicOPS<R>&, const SobolevMass<R>&, std::size_t,        \
                                                 const Tolerances&);                                            \
    template RConnection<R> connect_to_R(const MonicOPS<R>&, const MonicOPS<R>&, const FactoredNodes<R>&,       \
                                         std::size_t);                                                          \
    template std::vector<R> closed_form_B(const MonicOPS<R>&, const MonicOPS<R>&, const ConnectionCoeffs<R>&,   \
                                          const FactoredNodes<R>&, std::size_t);

MGT_INSTANTIATE(double)
MGT_INSTANTIATE(HpReal)

}  // namespace mgt
