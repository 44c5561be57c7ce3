#include "mgt/blockview.hpp"

namespace mgt {

template <class Real>
std::optional<std::size_t> MatrixPoly<Real>::degree() const {
    std::optional<std::size_t> d;
    for (const auto& e : entries)
        if (auto de = e.degree()) d = d ? std::max(*d, *de) : *de;
    return d;
}

template <class Real>
Matrix<Real> MatrixPoly<Real>::coeff(std::size_t d) const {
    Matrix<Real> m(N, N);
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t k = 0; k < N; ++k) m(r, k) = (*this)(r, k).coeff(d);
    return m;
}

template <class Real>
MatrixPoly<Real> unfold(const std::vector<Polynomial<Real>>& seq, const FactoredNodes<Real>& h, std::size_t n) {
    const std::size_t big_n = h.order();
    if (seq.size() < (n + 1) * big_n) throw HorizonError((n + 1) * big_n - 1, seq.size() - 1);
    MatrixPoly<Real> m{big_n, {}};
    m.entries.reserve(big_n * big_n);
    for (std::size_t r = 0; r < big_n; ++r) {
        const auto a = h_basis_decompose(seq[n * big_n + r], h);
        for (std::size_t k = 0; k < big_n; ++k) {
            std::vector<Real> c(a.powers());
            for (std::size_t p = 0; p < a.powers(); ++p) c[p] = a.at(p, k);
            m.entries.emplace_back(std::move(c));
        }
    }
    return m;
}

template <class Real>
std::vector<Polynomial<Real>> refold(const MatrixPoly<Real>& m, const FactoredNodes<Real>& h) {
    std::vector<Polynomial<Real>> out;
    for (std::size_t r = 0; r < m.N; ++r) {
        std::vector<Polynomial<Real>> row(m.entries.begin() + static_cast<long>(r * m.N),
                                          m.entries.begin() + static_cast<long>((r + 1) * m.N));
        out.push_back(r_refold(row, h));
    }
    return out;
}

template <class Real>
Matrix<Real> mass_matrix_L(const SobolevMass<Real>& masses, const FactoredNodes<Real>& h) {
    const auto& mn = masses.nodes().nodes();
    const auto& hn = h.nodes();
    bool same = mn.size() == hn.size();
    for (std::size_t i = 0; same && i < mn.size(); ++i)
        same = mn[i].root == hn[i].root && mn[i].multiplicity == hn[i].multiplicity;
    if (!same) throw ValidationError("mass nodes differ from the nodes of h");

    const std::size_t big_n = h.order();
    std::vector<std::vector<Real>> v(big_n, std::vector<Real>(big_n, Real(0)));
    for (std::size_t l = 0; l < hn.size(); ++l)
        for (unsigned j = 0; j < hn[l].multiplicity; ++j) {
            auto& vec = v[h.jet_index(l, j)];
            for (std::size_t k = j; k < big_n; ++k) {
                Real falling(1);
                for (std::size_t r = 0; r < j; ++r) falling *= Real(k - r);
                vec[k] = falling * real_pow(hn[l].root, static_cast<unsigned>(k - j));
            }
        }
    Matrix<Real> out(big_n, big_n);
    for (std::size_t a = 0; a < big_n; ++a)
        for (std::size_t b = 0; b < big_n; ++b) {
            const Real lam = masses.lambda()(a, b);
            if (lam == Real(0)) continue;
            for (std::size_t r = 0; r < big_n; ++r)
                for (std::size_t c = 0; c < big_n; ++c) out(r, c) += lam * v[a][r] * v[b][c];
        }
    return out.symmetrized();
}

template <class Real>
MatrixMoments<Real> matrix_moments_pushforward(const MomentFunctional<Real>& mu, const FactoredNodes<Real>& h,
                                               const SobolevMass<Real>* masses, std::size_t k_max) {
    const std::size_t big_n = h.order();
    if (big_n == 0) throw ValidationError("matrix moments need deg h >= 1");
    const std::size_t need = k_max * big_n + 2 * big_n - 2;
    if (mu.horizon() < need) throw HorizonError(need, mu.horizon());
    MatrixMoments<Real> out;
    out.with_masses = masses != nullptr;
    Polynomial<Real> hk = Polynomial<Real>::constant(Real(1));
    for (std::size_t k = 0; k <= k_max; ++k) {
        Matrix<Real> m(big_n, big_n);
        for (std::size_t i = 0; i < big_n; ++i)
            for (std::size_t j = 0; j < big_n; ++j) {
                Real s(0);
                for (std::size_t p = 0; p < hk.size(); ++p) s += hk.coeff(p) * mu.moment(p + i + j);
                m(i, j) = s;
            }
        if (k == 0 && masses) m += mass_matrix_L(*masses, h);
        out.blocks.push_back(std::move(m));
        hk = hk * h.expanded();
    }
    return out;
}

template <class Real>
Matrix<Real> matrix_inner(const MatrixPoly<Real>& a, const MatrixPoly<Real>& b, const MatrixMoments<Real>& m) {
    const std::size_t da = a.degree().value_or(0);
    const std::size_t db = b.degree().value_or(0);
    if (da + db >= m.blocks.size()) throw HorizonError(da + db, m.blocks.size() - 1);
    Matrix<Real> out(a.N, b.N);
    for (std::size_t d = 0; d <= da; ++d) {
        const auto ad = a.coeff(d);
        for (std::size_t e = 0; e <= db; ++e) out += ad * m.blocks[d + e] * b.coeff(e).transpose();
    }
    return out;
}

template <class Real>
BlockGram<Real> block_gram(const std::vector<Polynomial<Real>>& seq, const FactoredNodes<Real>& h,
                           const MatrixMoments<Real>& m, std::size_t blocks) {
    const std::size_t big_n = h.order();
    std::vector<MatrixPoly<Real>> u;
    for (std::size_t n = 0; n < blocks; ++n) u.push_back(unfold(seq, h, n));
    BlockGram<Real> g{big_n, blocks, Matrix<Real>(blocks * big_n, blocks * big_n), 0, true};
    for (std::size_t a = 0; a < blocks; ++a)
        for (std::size_t b = 0; b < blocks; ++b) {
            const auto blk = matrix_inner(u[a], u[b], m);
            for (std::size_t r = 0; r < big_n; ++r)
                for (std::size_t c = 0; c < big_n; ++c) g.gram(a * big_n + r, b * big_n + c) = blk(r, c);
        }
    Real worst(0);
    for (std::size_t i = 0; i < g.gram.rows(); ++i)
        for (std::size_t j = 0; j < g.gram.cols(); ++j)
            if (i / big_n != j / big_n)
                worst = std::max(worst, real_abs(g.gram(i, j)) / real_sqrt(real_abs(g.gram(i, i) * g.gram(j, j))));
    g.offdiag_residual = to_double(worst);
    for (std::size_t a = 0; a < blocks; ++a)
        g.diagonal_blocks_spd =
            g.diagonal_blocks_spd && cholesky(g.gram.block(a * big_n, a * big_n, big_n, big_n).symmetrized()).has_value();
    return g;
}

template <class Real>
Matrix<Real> BlockPartition<Real>::dense() const {
    Matrix<Real> out(blocks * N, blocks * N);
    for (std::size_t i = 0; i < blocks; ++i)
        for (std::size_t j = 0; j < blocks; ++j)
            for (std::size_t r = 0; r < N; ++r)
                for (std::size_t c = 0; c < N; ++c) out(i * N + r, j * N + c) = at(i, j)(r, c);
    return out;
}

template <class Real>
BlockPartition<Real> block_partition(const BandMatrix<Real>& band, std::size_t N) {
    if (N == 0) throw ValidationError("block size must be positive");
    if (band.lower() > N || band.upper() > N) throw ValidationError("bandwidth exceeds the block size");
    BlockPartition<Real> p{N, band.size() / N, {}};
    p.grid.reserve(p.blocks * p.blocks);
    for (std::size_t i = 0; i < p.blocks; ++i)
        for (std::size_t j = 0; j < p.blocks; ++j) {
            Matrix<Real> b(N, N);
            for (std::size_t r = 0; r < N; ++r)
                for (std::size_t c = 0; c < N; ++c) b(r, c) = band(i * N + r, j * N + c);
            p.grid.push_back(std::move(b));
        }
    return p;
}

template <class Real>
BlockStructureReport block_structure(const BlockPartition<Real>& p) {
    BlockStructureReport rep{p.N, p.blocks, true, 0, 0};
    Real outside(0);
    Real dev(0);
    for (std::size_t i = 0; i < p.blocks; ++i)
        for (std::size_t j = 0; j < p.blocks; ++j) {
            const auto& b = p.at(i, j);
            if (i > j + 1 || j > i + 1) outside = std::max(outside, b.max_abs());
            if (j == i + 1)
                for (std::size_t r = 0; r < p.N; ++r)
                    for (std::size_t c = r; c < p.N; ++c)
                        dev = std::max(dev, real_abs(b(r, c) - (r == c ? Real(1) : Real(0))));
        }
    rep.outside_max = to_double(outside);
    rep.block_tridiagonal = outside == Real(0);
    rep.super_unitriangular_dev = to_double(dev);
    return rep;
}

template <class Real>
BlockPartition<Real> block_multiply(const BlockPartition<Real>& a, const BlockPartition<Real>& b) {
    if (a.N != b.N || a.blocks != b.blocks) throw ValidationError("block partitions differ in shape");
    BlockPartition<Real> c{a.N, a.blocks, {}};
    for (std::size_t i = 0; i < a.blocks; ++i)
        for (std::size_t j = 0; j < a.blocks; ++j) {
            Matrix<Real> s(a.N, a.N);
            for (std::size_t k = 0; k < a.blocks; ++k) s += a.at(i, k) * b.at(k, j);
            c.grid.push_back(std::move(s));
        }
    return c;
}

#define MGT_INSTANTIATE(R)                                                                                     \
    template struct MatrixPoly<R>;                                                                             \
    template MatrixPoly<R> unfold(const std::vector<Polynomial<R>>&, const FactoredNodes<R>&, std::size_t);    \
    template std::vector<Polynomial<R>> refold(const MatrixPoly<R>&, const FactoredNodes<R>&);                 \
    template Matrix<R> mass_matrix_L(const SobolevMass<R>&, const FactoredNodes<R>&);                          \
    template MatrixMoments<R> matrix_moments_pushforward(const MomentFunctional<R>&, const FactoredNodes<R>&,  \
                                                         const SobolevMass<R>*, std::size_t);                  \
    template Matrix<R> matrix_inner(const MatrixPoly<R>&, const MatrixPoly<R>&, const MatrixMoments<R>&);      \
    template BlockGram<R> block_gram(const std::vector<Polynomial<R>>&, const FactoredNodes<R>&,               \
                                     const MatrixMoments<R>&, std::size_t);                                    \
    template struct BlockPartition<R>;                                                                         \
    template BlockPartition<R> block_partition(const BandMatrix<R>&, std::size_t);                             \
    template BlockStructureReport block_structure(const BlockPartition<R>&);                                   \
    template BlockPartition<R> block_multiply(const BlockPartition<R>&, const BlockPartition<R>&);

MGT_INSTANTIATE(double)
MGT_INSTANTIATE(HpReal)

}  // namespace mgt
