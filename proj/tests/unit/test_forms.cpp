#include "../support.hpp"

#include <doctest.h>

#include <cmath>

using namespace mgt;
using P = Polynomial<double>;
using Mu = MomentFunctional<double>;

namespace {

FactoredNodes<double> nodes(std::vector<Node<double>> n) { return FactoredNodes<double>(std::move(n)); }

double rel(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0 ? 0 : std::abs(a - b) / s;
}

P random_poly(std::mt19937_64& rng, std::size_t deg) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> c(deg + 1);
    for (auto& x : c) x = u(rng);
    return P(c);
}

}  // namespace

TEST_CASE("moments") {
    const auto lag = Mu::laguerre(0.0);
    CHECK(lag.moment(3) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(lag.moment(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(Mu::from_moments({1, 0.5, 0.4}).moment(1) == 0.5);
    CHECK_THROWS_AS(Mu::from_moments({1, 0.5, 0.4}).moment(3), HorizonError);
    CHECK_THROWS_AS(Mu::laguerre(-1.0), ValidationError);
    CHECK_THROWS_AS(Mu::from_moments({}), ValidationError);

    // Gamma-seeded recursion against tgamma at each order.
    for (double alpha : {0.0, 0.37, 1.0, 2.5}) {
        const auto mu = Mu::laguerre(alpha);
        CHECK(rel(mu.moment(0), std::tgamma(alpha + 1)) <= 1e-12);
        for (std::size_t k = 0; k < 30; ++k) {
            CHECK(rel(mu.moment(k + 1), (alpha + k + 1) * mu.moment(k)) <= 1e-15);
            CHECK(rel(mu.moment(k), std::tgamma(alpha + k + 1)) <= 1e-12);
        }
    }

    const auto q = Mu::quadrature({0.5, 2.0}, {0.25, 0.75});
    CHECK(q.moment(0) == 1.0);
    CHECK(q.moment(2) == doctest::Approx(0.25 * 0.25 + 0.75 * 4.0));
    CHECK(lag.hankel_positive(10));
    CHECK_FALSE(Mu::from_moments({1, 0, -1, 0, 1}).hankel_positive(2));
}

TEST_CASE("pushforward moments") {
    const auto mu = Mu::laguerre(0.0);
    const auto m0 = pushforward_moments(mu, nodes({{0, 1}}), 20);
    for (std::size_t k = 0; k <= 20; ++k) CHECK(rel(m0.moment(k), std::tgamma(k + 2.0)) <= 1e-12);
    CHECK_THROWS_AS(pushforward_moments(mu, FactoredNodes<double>(), 10), ValidationError);
    CHECK_THROWS_AS(pushforward_moments(mu, nodes({{0, 1}}), mu.horizon()), HorizonError);

    for (double alpha : {0.0, 0.5, 1.5})
        for (unsigned n : {1u, 2u, 3u}) {
            const auto tn = pushforward_moments(Mu::laguerre(alpha), nodes({{0.0, n}}), 10);
            const double ratio = std::tgamma(alpha + n + 1) / std::tgamma(alpha + 1);
            CHECK(rel(tn.moment(0), ratio * std::tgamma(alpha + 1)) <= 1e-12);
            const auto shifted = Mu::laguerre(alpha + n);
            for (std::size_t k = 0; k <= 10; ++k) CHECK(rel(tn.moment(k), shifted.moment(k)) <= 1e-12);
        }
}

TEST_CASE("Sobolev and Geronimus forms") {
    const auto mu = Mu::laguerre(0.0);
    const auto t1 = nodes({{0, 1}});
    const auto f = P({1, 2, 3});
    const auto g = P({-1, 0, 1, 1});

    const SobolevMass<double> zero(t1, Matrix<double>(1, 1));
    CHECK(sobolev_inner(mu, zero, f, g) == measure_inner(mu, f, g));
    Matrix<double> c(1, 1);
    c(0, 0) = 2.5;
    const SobolevMass<double> point(t1, c);
    CHECK(sobolev_inner(mu, point, P::constant(1), P::constant(1)) == doctest::Approx(3.5));
    CHECK(sobolev_inner(mu, point, P::monomial(1), P::constant(1)) == doctest::Approx(measure_inner(mu, P::monomial(1), P::constant(1))));

    // S = 0 reduces to the measure form.
    const GeronimusParams<double> trivial(t1, mu.hankel(0));
    CHECK(geronimus_inner(mu, trivial, f, g) == doctest::Approx(measure_inner(mu, f, g)));

    // f = h u: jets vanish, so the form is the mu_0 integral.
    const GeronimusParams<double> some(t1, Matrix<double>(1, 1));
    const auto mu0 = pushforward_moments(mu, t1, 40);
    CHECK(geronimus_inner(mu, some, t1.expanded() * f, g) == doctest::Approx(measure_inner(mu0, f, g)));

    // h = t^2 with diagonal S is the diagonal Sobolev form at 0.
    const auto t2 = nodes({{0, 2}});
    Matrix<double> s(2, 2);
    s(0, 0) = 1.5;
    s(1, 1) = 0.75;
    const GeronimusParams<double> diag(t2, mu.hankel(1) + s);
    const double expect = measure_inner(mu, f, g) + 1.5 * f(0.0) * g(0.0) + 0.75 * f.derivative(1)(0.0) * g.derivative(1)(0.0);
    CHECK(rel(geronimus_inner(mu, diag, f, g), expect) <= 1e-14);

    CHECK_THROWS_AS(GeronimusParams<double>(t2, Matrix<double>(1, 1)), ValidationError);
    Matrix<double> asym(2, 2);
    asym(0, 1) = 1;
    CHECK_THROWS_AS(GeronimusParams<double>(t2, asym), ValidationError);
    CHECK_THROWS_AS(SobolevMass<double>(t2, asym), ValidationError);
}

TEST_CASE("parameter maps") {
    const auto mu = Mu::laguerre(0.5);
    const auto h = nodes({{-1, 1}, {-2, 2}});
    const auto shat0 = lambda_to_shat(mu, h, Matrix<double>(3, 3)).shat;
    CHECK(max_abs_diff(shat0, mu.hankel(2)) == 0.0);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> order(1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        const auto hh = testing::random_nodes<double>(rng, order(rng));
        const auto lambda = testing::random_symmetric<double>(rng, hh.order());
        const auto params = lambda_to_shat(mu, hh, lambda);
        CHECK(params.shat.exactly_symmetric());
        const auto back = shat_to_lambda(mu, params).lambda();
        CHECK(max_abs_diff(back, lambda) <= 1e-10 * lambda.max_abs());

        // Shat - moments = A^T Lambda A, assembled independently.
        const auto a = confluent_matrix(hh);
        const auto direct = a.transpose() * lambda * a;
        CHECK(max_abs_diff(params.shat - mu.hankel(hh.order() - 1), direct) <= 1e-10 * (1 + direct.max_abs()));
    }
}

TEST_CASE("Gram matrices") {
    const auto mu = Mu::laguerre(0.0);
    const auto g1 = BilinearForm<double>::measure(mu).gram(1);
    CHECK(g1(0, 0) == doctest::Approx(1));
    CHECK(g1(0, 1) == doctest::Approx(1));
    CHECK(g1(1, 1) == doctest::Approx(2));

    const auto t1 = nodes({{0, 1}});
    const auto ger0 = BilinearForm<double>::geronimus(mu, GeronimusParams<double>(t1, mu.hankel(0)));
    CHECK(max_abs_diff(ger0.gram(8), BilinearForm<double>::measure(mu).gram(8)) <= 1e-12 * mu.moment(16));

    // Sobolev Gram = Hankel + V^T Lambda V with V the jet matrix of monomials.
    std::mt19937_64 rng(5);
    const auto h = testing::random_nodes<double>(rng, 3);
    const auto lambda = testing::random_symmetric<double>(rng, 3);
    const auto sob = BilinearForm<double>::sobolev(mu, SobolevMass<double>(h, lambda));
    const std::size_t n = 8;
    Matrix<double> v(3, n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const auto jk = jet(P::monomial(k), h);
        for (std::size_t r = 0; r < 3; ++r) v(r, k) = jk[r];
    }
    const auto expect = mu.hankel(n) + v.transpose() * lambda * v;
    const auto got = sob.gram(n);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) CHECK(rel(got(i, j), expect(i, j)) <= 1e-12);

    for (const auto& form : {BilinearForm<double>::measure(mu), sob, ger0}) {
        const auto g = form.gram(10);
        CHECK(g.exactly_symmetric());
    }
    const auto hk = BilinearForm<double>::measure(mu).gram(10);
    for (std::size_t i = 0; i <= 10; ++i)
        for (std::size_t j = 0; j <= 10; ++j)
            if (i > 0 && j < 10) CHECK(hk(i, j) == hk(i - 1, j + 1));
    CHECK_THROWS_AS(BilinearForm<double>::measure(Mu::from_moments({1, 1, 2})).gram(2), HorizonError);
}

TEST_CASE("multiplication symmetry and two-path Gram") {
    PrecisionScope scope(256);
    std::mt19937_64 rng(13);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto in = testing::random_positive<HpReal>(seed);
        const auto mu0 = pushforward_moments(in.mu, in.h, 60);
        for (int trial = 0; trial < 5; ++trial) {
            std::uniform_int_distribution<std::size_t> deg(0, 10);
            std::uniform_real_distribution<double> u(-1, 1);
            std::vector<HpReal> fc(deg(rng) + 1), gc(deg(rng) + 1);
            for (auto& x : fc) x = u(rng);
            for (auto& x : gc) x = u(rng);
            const Polynomial<HpReal> f(fc), g(gc);
            const HpReal a = in.form.inner(in.h.expanded() * f, g);
            const HpReal b = in.form.inner(f, in.h.expanded() * g);
            const HpReal m = measure_inner(mu0, f, g);
            const HpReal scale = 1 + real_abs(m);
            CHECK(to_double(real_abs(a - b) / scale) <= 1e-10);
            CHECK(to_double(real_abs(a - m) / scale) <= 1e-10);
            CHECK(in.form.inner(f, g) == in.form.inner(g, f));
        }
        const auto g1 = in.form.gram(12);
        const auto g2 = BilinearForm<HpReal>::sobolev(in.mu, shat_to_lambda(in.mu, in.params)).gram(12);
        for (std::size_t i = 0; i <= 12; ++i)
            for (std::size_t j = 0; j <= 12; ++j)
                CHECK(to_double(real_abs(g1(i, j) - g2(i, j)) / real_abs(g1(i, j))) <= 1e-9);
        CHECK(cholesky(in.form.gram(15)).has_value());
    }
}
