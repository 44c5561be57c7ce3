#include "../support.hpp"

#include "mgt/kernels.hpp"

#include <doctest.h>

using namespace mgt;
using namespace mgt::testing;
using R = HpReal;

namespace {

double d(const R& x) { return to_double(x); }

}  // namespace

TEST_CASE("unfolding") {
    PrecisionScope scope(256);
    const auto krall = preset<R>("laguerre-krall");
    const auto ch1 = chain(krall, 8);
    for (std::size_t n = 0; n < 8; ++n) {
        const auto m = unfold(ch1.pstar.polys, krall.h, n);
        REQUIRE(m.N == 1);
        CHECK(m(0, 0).coeffs() == ch1.pstar[n].coeffs());
    }
    const auto n2 = preset<R>("laguerre-N2");
    const auto ch = chain(n2, 12);
    for (std::size_t n = 0; n < 6; ++n) {
        const auto m = unfold(ch.pstar.polys, n2.h, n);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t k = 0; k < 2; ++k) {
                const auto deg = m(r, k).degree();
                if (n * 2 + r >= k) CHECK((!deg || *deg <= (n * 2 + r - k) / 2));
                else CHECK_FALSE(deg.has_value());
            }
        const auto back = refold(m, n2.h);
        for (std::size_t r = 0; r < 2; ++r) CHECK(d(relative_coeff_error(back[r], ch.pstar[2 * n + r])) <= 1e-10);
    }
    CHECK_THROWS_AS(unfold(ch.pstar.polys, n2.h, 7), HorizonError);
}

TEST_CASE("matrix moments and the mass matrix") {
    PrecisionScope scope(256);
    const auto mu = MomentFunctional<R>::laguerre(R(1));
    const FactoredNodes<R> t1({{R(0), 1u}});
    const auto m1 = matrix_moments_pushforward(mu, t1, static_cast<const SobolevMass<R>*>(nullptr), 10);
    for (std::size_t k = 0; k <= 10; ++k) CHECK(m1.blocks[k](0, 0) == mu.moment(k));

    const FactoredNodes<R> h({{R(-1), 2u}, {R("-2.5"), 1u}});
    const auto m = matrix_moments_pushforward(mu, h, static_cast<const SobolevMass<R>*>(nullptr), 4);
    CHECK(max_abs_diff(m.blocks[0], mu.hankel(2)) == R(0));
    for (const auto& b : m.blocks) CHECK(b.exactly_symmetric());
    CHECK_THROWS_AS(matrix_moments_pushforward(MomentFunctional<R>::laguerre(R(0), 10), h, static_cast<const SobolevMass<R>*>(nullptr), 4), HorizonError);

    const FactoredNodes<R> t3({{R(0), 3u}});
    Matrix<R> e0(3, 3), e1(3, 3);
    e0(0, 0) = R(2);
    e1(1, 1) = R(2);
    const auto l0 = mass_matrix_L(SobolevMass<R>(t3, e0), t3);
    const auto l1 = mass_matrix_L(SobolevMass<R>(t3, e1), t3);
    CHECK(max_abs_diff(l0, e0) == R(0));
    CHECK(max_abs_diff(l1, e1) == R(0));
    CHECK_THROWS_AS(mass_matrix_L(SobolevMass<R>(t3, e0), FactoredNodes<R>({{R(1), 3u}})), ValidationError);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const auto hh = random_nodes<R>(rng, 3);
        const auto lambda = random_symmetric<R>(rng, 3);
        const auto l = mass_matrix_L(SobolevMass<R>(hh, lambda), hh);
        const auto shat = lambda_to_shat(mu, hh, lambda).shat;
        CHECK(d(max_abs_diff(l, shat - mu.hankel(2))) <= 1e-60);
        CHECK(l.exactly_symmetric());
    }
}

TEST_CASE("block Gram of unfolded P*") {
    PrecisionScope scope(256);
    for (const char* name : {"laguerre-krall", "laguerre-N2", "simple-roots"}) {
        const auto in = preset<R>(name);
        const std::size_t big_n = in.h.order();
        const auto ch = chain(in, 5 * big_n + 1);
        const auto mm = matrix_moments_pushforward(in.mu, in.h, &in.masses, 8);
        const auto g = block_gram(ch.pstar.polys, in.h, mm, 5);
        CHECK(g.offdiag_residual <= 1e-7);
        CHECK(g.diagonal_blocks_spd);
        // The block Gram is the scalar Gram of P* under [.,.]_h.
        for (std::size_t i = 0; i < 5 * big_n; ++i)
            for (std::size_t j = 0; j < 5 * big_n; ++j) {
                const R s = in.form.inner(ch.pstar[i], ch.pstar[j]);
                CHECK(d(real_abs(g.gram(i, j) - s) / (1 + real_abs(s))) <= 1e-50);
            }
    }
}

TEST_CASE("block partitions of the banded operators") {
    PrecisionScope scope(256);
    for (const char* name : {"laguerre-N2", "simple-roots"}) {
        const auto in = preset<R>(name);
        const std::size_t big_n = in.h.order();
        const std::size_t M = 24;
        const auto ch = chain(in, M + big_n);
        const auto j = jacobi(ch.base);
        const auto hj = h_of_jacobi(j, in.h, M);
        const auto rep = block_structure(block_partition(hj, big_n));
        CHECK(rep.block_tridiagonal);
        CHECK(rep.super_unitriangular_dev <= 1e-9);
        CHECK(block_structure(block_partition(jstar_band(ch.pstar, in.h, M), big_n)).block_tridiagonal);

        const auto l = build_Lmon(ch.conn, M);
        const auto u = build_Umon(ch.base, ch.pstar, in.h, M);
        const auto lb = block_partition(l, big_n);
        const auto ub = block_partition(u, big_n);
        const auto lu = kernels::multiply(l, u, kernels::Execution::serial);
        const auto ul = kernels::multiply(u, l, kernels::Execution::serial);
        CHECK(d(max_abs_diff(block_multiply(lb, ub).dense(), block_partition(lu, big_n).dense())) <= 1e-10);
        CHECK(d(max_abs_diff(block_multiply(ub, lb).dense(), block_partition(ul, big_n).dense())) <= 1e-10);
        // L_mon is block lower bidiagonal, U_mon block upper bidiagonal.
        CHECK(block_structure(lb).block_tridiagonal);
        CHECK(block_structure(ub).block_tridiagonal);
    }
    BandMatrix<double> wide(8, 3, 1);
    CHECK_THROWS_AS(block_partition(wide, 2), ValidationError);
}
