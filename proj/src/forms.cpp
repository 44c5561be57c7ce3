#include "mgt/forms.hpp"

#include "mgt/kernels.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <sstream>

namespace mgt {

template <class Real>
MomentFunctional<Real> MomentFunctional<Real>::laguerre(const Real& alpha, std::size_t horizon) {
    if (!(alpha > Real(-1))) throw ValidationError("laguerre parameter must exceed -1");
    MomentFunctional mu;
    mu.kind_ = MeasureKind::laguerre;
    mu.alpha_ = alpha;
    mu.moments_.resize(horizon + 1);
    mu.moments_[0] = boost::math::tgamma(alpha + Real(1));
    for (std::size_t k = 0; k < horizon; ++k) mu.moments_[k + 1] = (alpha + Real(k + 1)) * mu.moments_[k];
    return mu;
}

template <class Real>
MomentFunctional<Real> MomentFunctional<Real>::from_moments(std::vector<Real> moments) {
    if (moments.empty()) throw ValidationError("explicit moment list is empty");
    MomentFunctional mu;
    mu.kind_ = MeasureKind::explicit_moments;
    mu.moments_ = std::move(moments);
    return mu;
}

template <class Real>
MomentFunctional<Real> MomentFunctional<Real>::quadrature(std::vector<Real> nodes, std::vector<Real> weights,
                                                          std::size_t horizon) {
    if (nodes.size() != weights.size() || nodes.empty())
        throw ValidationError("quadrature needs matching, nonempty node and weight lists");
    MomentFunctional mu;
    mu.kind_ = MeasureKind::quadrature;
    mu.moments_.assign(horizon + 1, Real(0));
    std::vector<Real> powers = weights;
    for (std::size_t k = 0; k <= horizon; ++k) {
        Real s(0);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            s += powers[i];
            powers[i] *= nodes[i];
        }
        mu.moments_[k] = s;
    }
    mu.nodes_ = std::move(nodes);
    mu.weights_ = std::move(weights);
    return mu;
}

template <class Real>
Matrix<Real> MomentFunctional<Real>::hankel(std::size_t n) const {
    Matrix<Real> h(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) h(i, j) = moment(i + j);
    return h;
}

template <class Real>
bool MomentFunctional<Real>::hankel_positive(std::size_t n) const {
    return cholesky(hankel(n)).has_value();
}

template <class Real>
MomentFunctional<Real> pushforward_moments(const MomentFunctional<Real>& mu, const FactoredNodes<Real>& h,
                                           std::size_t horizon) {
    const std::size_t n = h.order();
    if (n == 0) throw ValidationError("pushforward needs deg h >= 1");
    if (mu.horizon() < horizon + n) throw HorizonError(horizon + n, mu.horizon());
    const auto& b = h.expanded();
    std::vector<Real> m(horizon + 1, Real(0));
    for (std::size_t k = 0; k <= horizon; ++k) {
        Real s(0);
        for (std::size_t j = 0; j <= n; ++j) s += b.coeff(j) * mu.moment(k + j);
        m[k] = s;
    }
    return MomentFunctional<Real>::from_moments(std::move(m));
}

template <class Real>
SobolevMass<Real>::SobolevMass(FactoredNodes<Real> nodes, Matrix<Real> lambda)
    : nodes_(std::move(nodes)), lambda_(std::move(lambda)) {
    const std::size_t n = nodes_.order();
    if (lambda_.rows() != n || lambda_.cols() != n)
        throw ValidationError("mass matrix must be N x N with N = " + std::to_string(n));
    if (!lambda_.exactly_symmetric()) throw ValidationError("mass matrix is not symmetric");
}

template <class Real>
GeronimusParams<Real>::GeronimusParams(FactoredNodes<Real> h_, Matrix<Real> shat_)
    : h(std::move(h_)), shat(std::move(shat_)) {
    const std::size_t n = h.order();
    if (n == 0) throw ValidationError("Geronimus transform needs deg h >= 1");
    if (shat.rows() != n || shat.cols() != n)
        throw ValidationError("free block must be N x N with N = " + std::to_string(n));
    if (!shat.exactly_symmetric()) throw ValidationError("free block is not symmetric");
}

namespace {

template <class Real>
std::pair<const Polynomial<Real>*, const Polynomial<Real>*> ordered(const Polynomial<Real>& f,
                                                                    const Polynomial<Real>& g) {
    if (canonical_less(g, f)) return {&g, &f};
    return {&f, &g};
}

template <class Real>
Real raw_measure_inner(const MomentFunctional<Real>& mu, const Polynomial<Real>& a, const Polynomial<Real>& b) {
    const auto p = a * b;
    Real s(0);
    for (std::size_t k = 0; k < p.size(); ++k) s += p.coeff(k) * mu.moment(k);
    return s;
}

template <class Real>
Real quadratic(const std::vector<Real>& x, const Matrix<Real>& m, const std::vector<Real>& y) {
    Real s(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == Real(0)) continue;
        Real row(0);
        for (std::size_t j = 0; j < y.size(); ++j) row += m(i, j) * y[j];
        s += x[i] * row;
    }
    return s;
}

template <class Real>
Real geronimus_inner_with_offset(const MomentFunctional<Real>& mu, const FactoredNodes<Real>& h,
                                 const Matrix<Real>& s, const Polynomial<Real>& f, const Polynomial<Real>& g) {
    auto [a, b] = ordered(f, g);
    return raw_measure_inner(mu, *a, *b) + quadratic(remainder_coeffs(*a, h), s, remainder_coeffs(*b, h));
}

}  // namespace

template <class Real>
Real measure_inner(const MomentFunctional<Real>& mu, const Polynomial<Real>& f, const Polynomial<Real>& g) {
    auto [a, b] = ordered(f, g);
    return raw_measure_inner(mu, *a, *b);
}

template <class Real>
Real sobolev_inner(const MomentFunctional<Real>& mu, const SobolevMass<Real>& masses, const Polynomial<Real>& f,
                   const Polynomial<Real>& g) {
    auto [a, b] = ordered(f, g);
    return raw_measure_inner(mu, *a, *b) + quadratic(jet(*a, masses.nodes()), masses.lambda(), jet(*b, masses.nodes()));
}

template <class Real>
Matrix<Real> free_block_offset(const MomentFunctional<Real>& mu, const GeronimusParams<Real>& params) {
    const std::size_t n = params.h.order();
    Matrix<Real> s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s(i, j) = params.shat(i, j) - mu.moment(i + j);
    return s;
}

template <class Real>
Real geronimus_inner(const MomentFunctional<Real>& mu, const GeronimusParams<Real>& params, const Polynomial<Real>& f,
                     const Polynomial<Real>& g) {
    return geronimus_inner_with_offset(mu, params.h, free_block_offset(mu, params), f, g);
}

template <class Real>
GeronimusParams<Real> lambda_to_shat(const MomentFunctional<Real>& mu, const FactoredNodes<Real>& h,
                                     const Matrix<Real>& lambda) {
    const auto a = confluent_matrix(h);
    Matrix<Real> shat = a.transpose() * lambda * a;
    for (std::size_t i = 0; i < shat.rows(); ++i)
        for (std::size_t j = 0; j < shat.cols(); ++j) shat(i, j) += mu.moment(i + j);
    return GeronimusParams<Real>(h, shat.symmetrized());
}

template <class Real>
SobolevMass<Real> shat_to_lambda(const MomentFunctional<Real>& mu, const GeronimusParams<Real>& params) {
    const auto a_inv = LuDecomposition<Real>(confluent_matrix(params.h)).inverse();
    const auto lambda = a_inv.transpose() * free_block_offset(mu, params) * a_inv;
    return SobolevMass<Real>(params.h, lambda.symmetrized());
}

template <class Real>
BilinearForm<Real>::BilinearForm(MomentFunctional<Real> mu,
                                 std::variant<std::monostate, SobolevMass<Real>, GeronimusParams<Real>> extra)
    : mu_(std::move(mu)), extra_(std::move(extra)) {
    if (const auto* p = params()) s_ = free_block_offset(mu_, *p);
}

template <class Real>
BilinearForm<Real> BilinearForm<Real>::measure(MomentFunctional<Real> mu) {
    return BilinearForm(std::move(mu), std::monostate{});
}

template <class Real>
BilinearForm<Real> BilinearForm<Real>::sobolev(MomentFunctional<Real> mu, SobolevMass<Real> masses) {
    return BilinearForm(std::move(mu), std::move(masses));
}

template <class Real>
BilinearForm<Real> BilinearForm<Real>::geronimus(MomentFunctional<Real> mu, GeronimusParams<Real> params) {
    return BilinearForm(std::move(mu), std::move(params));
}

template <class Real>
FormKind BilinearForm<Real>::kind() const {
    if (masses()) return FormKind::sobolev;
    if (params()) return FormKind::geronimus;
    return FormKind::measure;
}

template <class Real>
const FactoredNodes<Real>* BilinearForm<Real>::nodes() const {
    if (const auto* m = masses()) return &m->nodes();
    if (const auto* p = params()) return &p->h;
    return nullptr;
}

template <class Real>
Real BilinearForm<Real>::inner(const Polynomial<Real>& f, const Polynomial<Real>& g) const {
    if (const auto* m = masses()) return sobolev_inner(mu_, *m, f, g);
    if (const auto* p = params()) return geronimus_inner_with_offset(mu_, p->h, s_, f, g);
    return measure_inner(mu_, f, g);
}

template <class Real>
Matrix<Real> BilinearForm<Real>::gram(std::size_t n) const {
    return kernels::gram(*this, n, kernels::Execution::parallel);
}

template <class Real>
std::size_t BilinearForm<Real>::required_horizon(std::size_t n) const {
    return 2 * n;
}

#define MGT_INSTANTIATE(R)                                                                                       \
    template class MomentFunctional<R>;                                                                          \
    template MomentFunctional<R> pushforward_moments(const MomentFunctional<R>&, const FactoredNodes<R>&,        \
                                                     std::size_t);                                               \
    template class SobolevMass<R>;                                                                               \
    template struct GeronimusParams<R>;                                                                          \
    template R measure_inner(const MomentFunctional<R>&, const Polynomial<R>&, const Polynomial<R>&);            \
    template R sobolev_inner(const MomentFunctional<R>&, const SobolevMass<R>&, const Polynomial<R>&,            \
                             const Polynomial<R>&);                                                              \
    template R geronimus_inner(const MomentFunctional<R>&, const GeronimusParams<R>&, const Polynomial<R>&,      \
                               const Polynomial<R>&);                                                            \
    template Matrix<R> free_block_offset(const MomentFunctional<R>&, const GeronimusParams<R>&);                 \
    template GeronimusParams<R> lambda_to_shat(const MomentFunctional<R>&, const FactoredNodes<R>&,              \
                                               const Matrix<R>&);                                                \
    template SobolevMass<R> shat_to_lambda(const MomentFunctional<R>&, const GeronimusParams<R>&);               \
    template class BilinearForm<R>;

MGT_INSTANTIATE(double)
MGT_INSTANTIATE(HpReal)

}  // namespace mgt
