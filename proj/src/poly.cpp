#include "mgt/polynomial.hpp"

#include <sstream>

namespace mgt {

template <class Real>
FactoredNodes<Real>::FactoredNodes(std::vector<Node<Real>> nodes) : nodes_(std::move(nodes)) {
    offsets_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].multiplicity == 0)
            throw ValidationError("node " + std::to_string(i) + " has zero multiplicity");
        for (std::size_t j = 0; j < i; ++j)
            if (nodes_[j].root == nodes_[i].root) {
                std::ostringstream os;
                os << "root " << to_double(nodes_[i].root) << " listed more than once (nodes " << j
                   << " and " << i << ")";
                throw ValidationError(os.str());
            }
        offsets_.push_back(order_);
        order_ += nodes_[i].multiplicity;
    }
    expanded_ = Polynomial<Real>::constant(Real(1));
    for (const auto& n : nodes_)
        for (unsigned k = 0; k < n.multiplicity; ++k) expanded_ = expanded_ * Polynomial<Real>::linear_factor(n.root);
}

template <class Real>
Polynomial<Real> expand_factored(const FactoredNodes<Real>& h) {
    return h.expanded();
}

template <class Real>
HBasisExpansion<Real> h_basis_decompose(const Polynomial<Real>& f, const FactoredNodes<Real>& h) {
    const std::size_t n = h.order();
    if (n == 0) throw ValidationError("h-basis needs deg h >= 1");
    HBasisExpansion<Real> out;
    out.order = n;
    Polynomial<Real> rest = f;
    while (!rest.is_zero()) {
        auto [q, r] = rest.divmod(h.expanded());
        std::vector<Real> row(n, Real(0));
        for (std::size_t m = 0; m < r.size(); ++m) row[m] = r.coeff(m);
        out.rows.push_back(std::move(row));
        rest = std::move(q);
    }
    return out;
}

template <class Real>
Polynomial<Real> h_basis_reconstruct(const HBasisExpansion<Real>& a, const FactoredNodes<Real>& h) {
    // Nested form (((r_K h + r_{K-1}) h + ...) h + r_0): never materializes h^k.
    Polynomial<Real> acc;
    for (std::size_t k = a.powers(); k-- > 0;) acc = acc * h.expanded() + Polynomial<Real>(a.rows[k]);
    return acc;
}

template <class Real>
Polynomial<Real> s_slice(const Polynomial<Real>& f, const FactoredNodes<Real>& h, std::size_t k) {
    const auto a = h_basis_decompose(f, h);
    if (k >= a.powers()) return {};
    Polynomial<Real> hk = Polynomial<Real>::constant(Real(1));
    for (std::size_t i = 0; i < k; ++i) hk = hk * h.expanded();
    return Polynomial<Real>(a.rows[k]) * hk;
}

template <class Real>
Polynomial<Real> r_unfold(const Polynomial<Real>& f, const FactoredNodes<Real>& h, std::size_t m) {
    if (m >= h.order()) throw ValidationError("unfold index must be below deg h");
    const auto a = h_basis_decompose(f, h);
    std::vector<Real> c(a.powers(), Real(0));
    for (std::size_t k = 0; k < a.powers(); ++k) c[k] = a.rows[k][m];
    return Polynomial<Real>(std::move(c));
}

template <class Real>
Polynomial<Real> r_refold(const std::vector<Polynomial<Real>>& slices, const FactoredNodes<Real>& h) {
    Polynomial<Real> acc;
    for (std::size_t m = 0; m < slices.size(); ++m)
        acc += Polynomial<Real>::monomial(m) * slices[m].compose(h.expanded());
    return acc;
}

template <class Real>
Matrix<Real> confluent_matrix(const FactoredNodes<Real>& h, const Tolerances& tol) {
    const std::size_t n = h.order();
    Matrix<Real> a(n, n);
    for (std::size_t i = 0; i < h.distinct(); ++i) {
        const auto& node = h.nodes()[i];
        for (unsigned j = 0; j < node.multiplicity; ++j) {
            const std::size_t row = h.jet_index(i, j);
            for (std::size_t m = j; m < n; ++m) {
                Real falling(1);
                for (std::size_t r = 0; r < j; ++r) falling *= Real(m - r);
                a(row, m) = falling * real_pow(node.root, static_cast<unsigned>(m - j));
            }
        }
    }
    const double cond = condition_number(a);
    if (cond > condition_threshold<Real>(tol)) {
        std::ostringstream os;
        os << "confluent Vandermonde matrix is ill-conditioned (cond_1 ~ " << cond << ")";
        warn(os.str());
    }
    return a;
}

template <class Real>
Jet<Real> jet(const Polynomial<Real>& f, const FactoredNodes<Real>& h) {
    Jet<Real> out(h.order(), Real(0));
    for (std::size_t i = 0; i < h.distinct(); ++i) {
        const auto& node = h.nodes()[i];
        Polynomial<Real> d = f;
        for (unsigned j = 0; j < node.multiplicity; ++j) {
            out[h.jet_index(i, j)] = d(node.root);
            d = d.derivative();
        }
    }
    return out;
}

template <class Real>
std::vector<Real> remainder_coeffs(const Polynomial<Real>& f, const FactoredNodes<Real>& h) {
    const std::size_t n = h.order();
    std::vector<Real> out(n, Real(0));
    const auto r = f.divmod(h.expanded()).second;
    for (std::size_t m = 0; m < r.size(); ++m) out[m] = r.coeff(m);
    return out;
}

#define MGT_INSTANTIATE(R)                                                                         \
    template class FactoredNodes<R>;                                                               \
    template Polynomial<R> expand_factored(const FactoredNodes<R>&);                               \
    template HBasisExpansion<R> h_basis_decompose(const Polynomial<R>&, const FactoredNodes<R>&);  \
    template Polynomial<R> h_basis_reconstruct(const HBasisExpansion<R>&, const FactoredNodes<R>&);\
    template Polynomial<R> s_slice(const Polynomial<R>&, const FactoredNodes<R>&, std::size_t);    \
    template Polynomial<R> r_unfold(const Polynomial<R>&, const FactoredNodes<R>&, std::size_t);   \
    template Polynomial<R> r_refold(const std::vector<Polynomial<R>>&, const FactoredNodes<R>&);   \
    template Matrix<R> confluent_matrix(const FactoredNodes<R>&, const Tolerances&);               \
    template Jet<R> jet(const Polynomial<R>&, const FactoredNodes<R>&);                            \
    template std::vector<R> remainder_coeffs(const Polynomial<R>&, const FactoredNodes<R>&);

MGT_INSTANTIATE(double)
MGT_INSTANTIATE(HpReal)

}  // namespace mgt
