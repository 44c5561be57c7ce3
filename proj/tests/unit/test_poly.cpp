#include "../support.hpp"

#include <doctest.h>

using namespace mgt;
using P = Polynomial<double>;

namespace {

FactoredNodes<double> nodes(std::vector<Node<double>> n) { return FactoredNodes<double>(std::move(n)); }

}  // namespace

TEST_CASE("eval and derivative") {
    CHECK(P({1, 2})(3.0) == 7.0);
    CHECK(P()(5.0) == 0.0);
    CHECK(P::monomial(2)(-2.0) == 4.0);
    CHECK(P::monomial(3).derivative(1).coeffs() == std::vector<double>{0, 0, 3});
    CHECK(P::monomial(3).derivative(4).is_zero());
    CHECK(P::constant(5).derivative(1).is_zero());
    CHECK_FALSE(P().degree().has_value());
    CHECK(P({1, 0, 0}).degree() == 0u);
}

TEST_CASE("expand_factored") {
    CHECK(expand_factored(nodes({{0, 2}})).coeffs() == std::vector<double>{0, 0, 1});
    CHECK(expand_factored(nodes({{0, 1}, {1, 1}})).coeffs() == std::vector<double>{0, -1, 1});
    CHECK(expand_factored(nodes({{2, 2}})).coeffs() == std::vector<double>{4, -4, 1});
    CHECK_THROWS_AS(nodes({{1, 1}, {1, 1}}), ValidationError);
    CHECK_THROWS_AS(nodes({{1, 0}}), ValidationError);
}

TEST_CASE("h-basis decomposition, slices and unfolding") {
    const auto t2 = nodes({{0, 2}});
    const auto a = h_basis_decompose(P::monomial(3), t2);
    CHECK(a.at(1, 1) == 1.0);
    CHECK(a.at(0, 0) == 0.0);
    CHECK(a.at(0, 1) == 0.0);
    CHECK(a.at(1, 0) == 0.0);
    CHECK(h_basis_decompose(P::monomial(4), t2).at(2, 0) == 1.0);

    const auto pm = nodes({{1, 1}, {-1, 1}});  // t^2 - 1
    const auto b = h_basis_decompose(P({1, 0, 1}), pm);
    CHECK(b.at(1, 0) == 1.0);
    CHECK(b.at(0, 0) == 2.0);

    CHECK(s_slice(P::monomial(3), t2, 0).is_zero());
    CHECK(s_slice(P::monomial(3), t2, 1).coeffs() == P::monomial(3).coeffs());
    CHECK(s_slice(P({1, 0, 1}), pm, 0).coeffs() == std::vector<double>{2});

    CHECK(r_unfold(P::monomial(3), t2, 1).coeffs() == P::monomial(1).coeffs());
    CHECK(r_unfold(P::monomial(4), t2, 0).coeffs() == P::monomial(2).coeffs());
    CHECK(r_unfold(P::constant(7), pm, 0).coeffs() == std::vector<double>{7});
}

TEST_CASE("confluent matrix and jets") {
    const auto simple = confluent_matrix(nodes({{0, 1}, {1, 1}}));
    CHECK(simple(0, 0) == 1.0);
    CHECK(simple(0, 1) == 0.0);
    CHECK(simple(1, 0) == 1.0);
    CHECK(simple(1, 1) == 1.0);
    const auto dbl0 = confluent_matrix(nodes({{0, 2}}));
    CHECK(max_abs_diff(dbl0, Matrix<double>::identity(2)) == 0.0);
    const auto dbl2 = confluent_matrix(nodes({{2, 2}}));
    CHECK(dbl2(0, 0) == 1.0);
    CHECK(dbl2(0, 1) == 2.0);
    CHECK(dbl2(1, 0) == 0.0);
    CHECK(dbl2(1, 1) == 1.0);

    CHECK(jet(P::constant(1), nodes({{0, 2}, {3, 1}})) == std::vector<double>{1, 0, 1});
    CHECK(jet(P::monomial(1), nodes({{0, 2}})) == std::vector<double>{0, 1});
    CHECK(jet(P::monomial(2), nodes({{0, 1}, {1, 1}})) == std::vector<double>{0, 1});
}

namespace {

/// Every invariant on 200 random (f, h) pairs, computed in Real and measured in binary64.
template <class Real>
void check_random_properties() {
    using R = Polynomial<Real>;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_int_distribution<std::size_t> deg(0, 25), order(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        CAPTURE(trial);
        std::vector<Real> c(deg(rng) + 1);
        for (auto& x : c) x = Real(u(rng));
        const R f(c);
        const auto h = testing::random_nodes<Real>(rng, order(rng));
        const std::size_t big_n = h.order();
        const double fmax = to_double(f.max_abs_coeff());

        const auto back = h_basis_reconstruct(h_basis_decompose(f, h), h);
        double err = 0;
        for (std::size_t k = 0; k < std::max(back.size(), f.size()); ++k)
            err = std::max(err, to_double(real_abs(Real(back.coeff(k) - f.coeff(k)))));
        CHECK(err <= 1e-10 * (1 + fmax));

        R sum;
        for (std::size_t k = 0; k < h_basis_decompose(f, h).powers(); ++k) sum += s_slice(f, h, k);
        CHECK(to_double(relative_coeff_error(sum, f)) <= 1e-10);

        const auto j1 = jet(f, h);
        const auto j2 = confluent_matrix(h) * remainder_coeffs(f, h);
        REQUIRE(j1.size() == big_n);
        double scale = 1, diff = 0;
        for (std::size_t i = 0; i < big_n; ++i) {
            scale = std::max(scale, to_double(real_abs(j1[i])));
            diff = std::max(diff, to_double(real_abs(Real(j1[i] - j2[i]))));
        }
        CHECK(diff <= 1e-10 * scale);

        std::vector<R> slices;
        for (std::size_t k = 0; k < big_n; ++k) slices.push_back(r_unfold(f, h, k));
        CHECK(to_double(relative_coeff_error(r_refold(slices, h), f)) <= 1e-10);
        for (int s = 0; s < 50; ++s) {
            const Real t = Real(-4) + Real(5) * Real(s) / Real(49);
            Real v(0), mag(1), tk(1);
            for (std::size_t k = 0; k < big_n; ++k, tk *= t) v += tk * slices[k](h.expanded()(t));
            tk = Real(1);
            for (std::size_t k = 0; k < f.size(); ++k, tk *= t) mag += real_abs(f.coeff(k)) * real_abs(tk);
            CHECK(to_double(real_abs(Real(f(t) - v))) <= 1e-10 * to_double(mag));
        }

        for (const auto& node : h.nodes())
            for (unsigned j = 0; j < node.multiplicity; ++j) {
                const auto d = h.expanded().derivative(j);
                Real sc(1), rk(1);
                for (std::size_t k = 0; k < d.size(); ++k, rk *= real_abs(node.root)) sc += real_abs(d.coeff(k)) * rk;
                CHECK(to_double(real_abs(d(node.root))) <= 1e-9 * to_double(sc));
            }
        CHECK(h.expanded().leading() == Real(1));
        CHECK(h.expanded().degree() == big_n);
    }
}

}  // namespace

TEST_CASE("properties on random inputs, hp256") {
    PrecisionScope scope(256);
    check_random_properties<HpReal>();
}

// Registered as its own ctest entry. Degree 25 against roots in [-3, 0] puts h-basis
// coefficients near 1e6 and above, so binary64 cannot meet 1e-10 on every draw.
TEST_CASE("properties on random inputs, binary64") {
    check_random_properties<double>();
}
