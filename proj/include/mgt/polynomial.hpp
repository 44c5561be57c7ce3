#pragma once

// Dense real polynomials, factored transforming polynomials h, derivative jets at the
// roots of h, the {t^m h^k} basis and the confluent Vandermonde matrix.

#include "mgt/dense.hpp"
#include "mgt/real.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mgt {

/// Ascending-power coefficients; trailing zeros are trimmed so the last stored
/// coefficient is the leading one. The zero polynomial stores nothing and has no degree.
template <class Real>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Real> ascending) : c_(std::move(ascending)) { trim(); }

    static Polynomial constant(const Real& c) { return Polynomial(std::vector<Real>{c}); }
    static Polynomial monomial(std::size_t k, const Real& c = Real(1)) {
        std::vector<Real> v(k + 1, Real(0));
        v[k] = c;
        return Polynomial(std::move(v));
    }
    /// t - a
    static Polynomial linear_factor(const Real& a) { return Polynomial(std::vector<Real>{-a, Real(1)}); }

    bool is_zero() const { return c_.empty(); }
    std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }
    /// Number of stored coefficients (degree + 1, or 0 for the zero polynomial).
    std::size_t size() const { return c_.size(); }
    const std::vector<Real>& coeffs() const { return c_; }
    Real coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Real(0); }
    Real leading() const { return c_.empty() ? Real(0) : c_.back(); }

    Real operator()(const Real& t) const {
        Real r(0);
        for (std::size_t k = c_.size(); k-- > 0;) r = r * t + c_[k];
        return r;
    }

    Real max_abs_coeff() const {
        Real m(0);
        for (const auto& x : c_) m = std::max(m, real_abs(x));
        return m;
    }

    Polynomial derivative(unsigned order = 1) const {
        if (order == 0) return *this;
        if (c_.size() <= order) return {};
        std::vector<Real> d(c_.size() - order);
        for (std::size_t k = order; k < c_.size(); ++k) {
            Real f(1);
            for (std::size_t j = 0; j < order; ++j) f *= Real(k - j);
            d[k - order] = c_[k] * f;
        }
        return Polynomial(std::move(d));
    }

    /// p(q(t)) by Horner's scheme in polynomial arithmetic.
    Polynomial compose(const Polynomial& q) const {
        Polynomial r;
        for (std::size_t k = c_.size(); k-- > 0;) r = r * q + constant(c_[k]);
        return r;
    }

    /// Quotient and remainder by a nonzero divisor.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
        if (divisor.is_zero()) throw ValidationError("polynomial division by zero");
        const std::size_t dn = divisor.c_.size();
        if (c_.size() < dn) return {Polynomial(), *this};
        std::vector<Real> rem = c_;
        std::vector<Real> quot(c_.size() - dn + 1, Real(0));
        const Real lead = divisor.c_.back();
        for (std::size_t k = quot.size(); k-- > 0;) {
            const Real q = rem[k + dn - 1] / lead;
            quot[k] = q;
            rem[k + dn - 1] = Real(0);
            for (std::size_t j = 0; j + 1 < dn; ++j) rem[k + j] -= q * divisor.c_[j];
        }
        rem.resize(dn - 1);
        return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Real(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Real(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    Polynomial& operator*=(const Real& s) {
        for (auto& x : c_) x *= s;
        trim();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= Real(-1); }
    friend Polynomial operator*(Polynomial a, const Real& s) { return a *= s; }
    friend Polynomial operator*(const Real& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Real> r(a.c_.size() + b.c_.size() - 1, Real(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    /// Strict total order on coefficient vectors; used to evaluate symmetric formulas
    /// with a fixed operand order.
    friend bool canonical_less(const Polynomial& a, const Polynomial& b) {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        for (std::size_t k = a.c_.size(); k-- > 0;)
            if (a.c_[k] != b.c_[k]) return a.c_[k] < b.c_[k];
        return false;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == Real(0)) c_.pop_back();
    }

    std::vector<Real> c_;
};

template <class Real>
Real eval(const Polynomial<Real>& p, const Real& t) {
    return p(t);
}

template <class Real>
Polynomial<Real> derivative(const Polynomial<Real>& p, unsigned order) {
    return p.derivative(order);
}

/// max_k |a_k - b_k| / max_k |b_k|; 0 when both are zero.
template <class Real>
Real relative_coeff_error(const Polynomial<Real>& a, const Polynomial<Real>& b) {
    const std::size_t n = std::max(a.size(), b.size());
    Real diff(0);
    for (std::size_t k = 0; k < n; ++k) diff = std::max(diff, real_abs(a.coeff(k) - b.coeff(k)));
    const Real scale = b.max_abs_coeff();
    if (scale == Real(0)) return diff;
    return diff / scale;
}

// Factored transforming polynomial ---------------------------------------------------------

template <class Real>
struct Node {
    Real root;
    unsigned multiplicity;
};

/// h(t) = prod (t - root_i)^multiplicity_i with pairwise distinct roots; N = sum of
/// multiplicities. Jet ordering is: nodes in input order, derivatives ascending.
template <class Real>
class FactoredNodes {
public:
    FactoredNodes() = default;
    explicit FactoredNodes(std::vector<Node<Real>> nodes);

    const std::vector<Node<Real>>& nodes() const { return nodes_; }
    std::size_t distinct() const { return nodes_.size(); }
    std::size_t order() const { return order_; }
    const Polynomial<Real>& expanded() const { return expanded_; }

    /// Position of (node, derivative) in the stacked jet.
    std::size_t jet_index(std::size_t node, unsigned deriv) const { return offsets_[node] + deriv; }
    std::size_t node_offset(std::size_t node) const { return offsets_[node]; }

private:
    std::vector<Node<Real>> nodes_;
    std::vector<std::size_t> offsets_;
    std::size_t order_ = 0;
    Polynomial<Real> expanded_ = Polynomial<Real>::constant(Real(1));
};

/// Stacked derivative values (f(a_1), f'(a_1), ..., f^(b_1-1)(a_1), f(a_2), ...).
template <class Real>
using Jet = std::vector<Real>;

/// Coefficients a_{k,m} of f = sum_k sum_{m<N} a_{k,m} t^m h^k; rows[k][m].
template <class Real>
struct HBasisExpansion {
    std::size_t order = 0;                    ///< N
    std::vector<std::vector<Real>> rows;      ///< one row of length N per power of h

    std::size_t powers() const { return rows.size(); }
    Real at(std::size_t k, std::size_t m) const {
        return k < rows.size() && m < order ? rows[k][m] : Real(0);
    }
};

template <class Real>
Polynomial<Real> expand_factored(const FactoredNodes<Real>& h);

/// Remainder chain of repeated division by h.
template <class Real>
HBasisExpansion<Real> h_basis_decompose(const Polynomial<Real>& f, const FactoredNodes<Real>& h);

/// sum_k sum_m a_{k,m} t^m h^k evaluated back into monomial form.
template <class Real>
Polynomial<Real> h_basis_reconstruct(const HBasisExpansion<Real>& a, const FactoredNodes<Real>& h);

/// S_{k,h}(f) = (sum_m a_{k,m} t^m) h^k.
template <class Real>
Polynomial<Real> s_slice(const Polynomial<Real>& f, const FactoredNodes<Real>& h, std::size_t k);

/// R_{m,h}(f)(y) = sum_k a_{k,m} y^k: the t^m slice with h replaced by the variable.
template <class Real>
Polynomial<Real> r_unfold(const Polynomial<Real>& f, const FactoredNodes<Real>& h, std::size_t m);

/// sum_m t^m R_{m,h}(f)(h(t)).
template <class Real>
Polynomial<Real> r_refold(const std::vector<Polynomial<Real>>& slices, const FactoredNodes<Real>& h);

/// N x N confluent Vandermonde matrix: row (node i, derivative j), column m holds
/// m!/(m-j)! a_i^(m-j). Emits a warning when badly conditioned.
template <class Real>
Matrix<Real> confluent_matrix(const FactoredNodes<Real>& h, const Tolerances& tol = {});

template <class Real>
Jet<Real> jet(const Polynomial<Real>& f, const FactoredNodes<Real>& h);

/// Coefficients of f mod h (the k = 0 row of the h-basis expansion), padded to length N.
template <class Real>
std::vector<Real> remainder_coeffs(const Polynomial<Real>& f, const FactoredNodes<Real>& h);

}  // namespace mgt
