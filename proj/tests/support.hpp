#pragma once

// Shared fixtures: random configurations with fixed seeds and the standard pipeline
// base -> connection -> P*.

#include "mgt/cli.hpp"
#include "mgt/factor.hpp"

#include <random>

namespace mgt::testing {

template <class Real>
struct Instance {
    MomentFunctional<Real> mu;
    FactoredNodes<Real> h;
    GeronimusParams<Real> params;
    SobolevMass<Real> masses;
    BilinearForm<Real> form;
};

template <class Real>
Instance<Real> from_setup(cli::Setup<Real> s) {
    return {std::move(s.mu), std::move(s.h), std::move(s.params), std::move(s.masses), std::move(s.form)};
}

template <class Real>
Instance<Real> preset(const std::string& name) {
    return from_setup(cli::Setup<Real>::build(cli::preset_config(name)));
}

template <class Real>
Instance<Real> from_lambda(MomentFunctional<Real> mu, FactoredNodes<Real> h, const Matrix<Real>& lambda) {
    auto params = lambda_to_shat(mu, h, lambda);
    SobolevMass<Real> masses(h, lambda);
    auto form = BilinearForm<Real>::geronimus(mu, params);
    return {std::move(mu), std::move(h), std::move(params), std::move(masses), std::move(form)};
}

/// Distinct roots in [lo, hi], total order N, occasionally one double root.
template <class Real>
FactoredNodes<Real> random_nodes(std::mt19937_64& rng, std::size_t big_n, double lo = -3.0, double hi = 0.0) {
    std::uniform_real_distribution<double> root(lo, hi);
    std::bernoulli_distribution twice(0.3);
    std::vector<Node<Real>> nodes;
    std::vector<double> used;
    std::size_t total = 0;
    while (total < big_n) {
        double r = root(rng);
        bool clash = false;
        for (double u : used) clash = clash || std::abs(u - r) < 0.08 * (hi - lo);
        if (clash) continue;
        used.push_back(r);
        const unsigned m = (big_n - total >= 2 && twice(rng)) ? 2u : 1u;
        nodes.push_back({Real(r), m});
        total += m;
    }
    return FactoredNodes<Real>(std::move(nodes));
}

/// B B^T with B entries in [-1, 1], optionally rank deficient.
template <class Real>
Matrix<Real> random_psd(std::mt19937_64& rng, std::size_t n, std::size_t rank) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix<Real> b(n, rank);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < rank; ++j) b(i, j) = Real(u(rng));
    return (b * b.transpose()).symmetrized();
}

template <class Real>
Matrix<Real> random_symmetric(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Matrix<Real> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = Real(u(rng));
    return m;
}

/// Laguerre alpha in [0, 2], N in {1, 2, 3}, S = B B^T: a positive definite Geronimus form.
template <class Real>
Instance<Real> random_positive(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> alpha(0.0, 2.0);
    std::uniform_int_distribution<std::size_t> order(1, 3);
    auto mu = MomentFunctional<Real>::laguerre(Real(alpha(rng)));
    const std::size_t big_n = order(rng);
    auto h = random_nodes<Real>(rng, big_n);
    std::uniform_int_distribution<std::size_t> rank(1, big_n);
    Matrix<Real> shat = random_psd<Real>(rng, big_n, rank(rng)) + mu.hankel(big_n - 1);
    GeronimusParams<Real> params(h, shat.symmetrized());
    auto masses = shat_to_lambda(mu, params);
    auto form = BilinearForm<Real>::geronimus(mu, params);
    return {std::move(mu), std::move(h), std::move(params), std::move(masses), std::move(form)};
}

template <class Real>
MonicOPS<Real> base_ops(const Instance<Real>& in, std::size_t degree) {
    return monic_ops_from_form(BilinearForm<Real>::measure(pushforward_moments(in.mu, in.h, in.mu.horizon() - in.h.order())),
                               degree);
}

template <class Real>
struct Chain {
    MonicOPS<Real> base;
    ConnectionCoeffs<Real> conn;
    MonicOPS<Real> pstar;
};

/// P*_0..P*_degree; the base reaches degree + 1 so d*_{degree+1} is available.
template <class Real>
Chain<Real> chain(const Instance<Real>& in, std::size_t degree) {
    auto base = base_ops(in, degree + 1);
    auto conn = connection_coeffs(base, in.form, degree);
    auto ps = pstar_sequence(base, in.form, conn);
    return {std::move(base), std::move(conn), std::move(ps)};
}

/// Monic Laguerre polynomial of degree n: sum_k (-1)^{n-k} C(n,k) Gamma(n+a+1)/Gamma(k+a+1) t^k.
template <class Real>
Polynomial<Real> monic_laguerre(std::size_t n, const Real& alpha) {
    std::vector<Real> c(n + 1);
    Real ratio(1);  // Gamma(n+a+1)/Gamma(k+a+1), built downward from k = n
    Real binom(1);  // C(n, k)
    for (std::size_t k = n + 1; k-- > 0;) {
        c[k] = ((n - k) % 2 ? Real(-1) : Real(1)) * binom * ratio;
        if (k == 0) break;
        ratio *= Real(k) + alpha;
        binom = binom * Real(k) / Real(n - k + 1);
    }
    return Polynomial<Real>(std::move(c));
}

}  // namespace mgt::testing
