#include "../support.hpp"

#include "mgt/kernels.hpp"

#include <doctest.h>

using namespace mgt;
using namespace mgt::testing;
using R = HpReal;

namespace {

double d(const R& x) { return to_double(x); }

struct Sections {
    Chain<R> ch;
    JacobiMatrix<R> j;
    BandMatrix<R> l, u, jstar, hj;
};

Sections sections(const Instance<R>& in, std::size_t M) {
    auto ch = chain(in, M + in.h.order() + 8);
    auto j = jacobi(ch.base);
    auto l = build_Lmon(ch.conn, M);
    auto u = build_Umon(ch.base, ch.pstar, in.h, M);
    auto js = jstar_band(ch.pstar, in.h, M);
    auto hj = h_of_jacobi(j, in.h, M);
    return {std::move(ch), std::move(j), std::move(l), std::move(u), std::move(js), std::move(hj)};
}

}  // namespace

TEST_CASE("band structure of the factors") {
    PrecisionScope scope(256);
    for (const char* name : {"laguerre-krall", "laguerre-N2", "simple-roots"}) {
        const auto in = preset<R>(name);
        const std::size_t big_n = in.h.order();
        const std::size_t M = 20 + 2 * big_n;
        const auto s = sections(in, M);
        CHECK(s.l.lower() == big_n);
        CHECK(s.l.upper() == 0);
        CHECK(s.u.lower() == 0);
        CHECK(s.u.upper() == big_n);
        CHECK(s.jstar.lower() == big_n);
        CHECK(s.jstar.upper() == big_n);
        CHECK(s.hj.lower() == big_n);
        CHECK(s.hj.upper() == big_n);
        CHECK(s.l(0, 0) == R(1));
        for (std::size_t n = 0; n < M; ++n) {
            CHECK(s.l(n, n) == R(1));
            if (n + big_n < M) {
                CHECK(s.u(n, n + big_n) == R(1));
                CHECK(s.jstar(n, n + big_n) == R(1));
            }
        }
        // h P = U P* and P* = L P as polynomial identities.
        for (std::size_t n = 0; n + big_n < M; ++n) {
            Polynomial<R> rhs;
            for (std::size_t i = n; i <= n + big_n; ++i) rhs += Polynomial<R>::constant(s.u(n, i)) * s.ch.pstar[i];
            CHECK(d(relative_coeff_error(rhs, in.h.expanded() * s.ch.base[n])) <= 1e-9);
            Polynomial<R> lp;
            for (std::size_t k = (n > big_n ? n - big_n : 0); k <= n; ++k) lp += Polynomial<R>::constant(s.l(n, k)) * s.ch.base[k];
            CHECK(d(relative_coeff_error(lp, s.ch.pstar[n])) <= 1e-50);
        }
        // Full inner products decay outside the band.
        const auto full = jstar_full(s.ch.pstar, in.h, M);
        R out(0), scale(0);
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t k = 0; k < M; ++k) {
                scale = std::max(scale, real_abs(full(i, k)));
                if (i > k + big_n || k > i + big_n) out = std::max(out, real_abs(full(i, k)));
            }
        CHECK(d(out / scale) <= 1e-9);
        // U by division agrees with the projection construction.
        const auto div = umon_by_division(s.hj, s.l);
        const std::size_t v = M - 2 * big_n;
        R dev(0), uscale(1);
        for (std::size_t i = 0; i < v; ++i)
            for (std::size_t k = 0; k < v; ++k) {
                dev = std::max(dev, real_abs(div(i, k) - s.u(i, k)));
                uscale = std::max(uscale, real_abs(s.u(i, k)));
            }
        CHECK(d(dev / uscale) <= 1e-40);
    }
}

TEST_CASE("h(J) for h = t is J") {
    PrecisionScope scope(256);
    const auto in = preset<R>("laguerre-krall");
    const auto s = sections(in, 12);
    const auto jm = s.j.monic(12);
    CHECK(max_abs_diff(s.hj.dense(), jm.dense()) == R(0));

    // h = t^2: the square of the tridiagonal section, pentadiagonal.
    const auto t2 = preset<R>("laguerre-N2");
    const auto s2 = sections(t2, 12);
    const auto sq = kernels::multiply(s2.j.monic(14), s2.j.monic(14), kernels::Execution::serial);
    CHECK(d(max_abs_diff(s2.hj, sq, 12)) <= 1e-60);
}

TEST_CASE("S = 0: L_mon is the change of basis from mu_0 to mu") {
    PrecisionScope scope(256);
    const auto in = preset<R>("trivial");
    const auto s = sections(in, 10);
    const auto r = monic_ops_from_form(BilinearForm<R>::measure(in.mu), 10);
    const auto mu0 = BilinearForm<R>::measure(pushforward_moments(in.mu, in.h, 80));
    for (std::size_t n = 0; n < 10; ++n)
        for (std::size_t k = 0; k <= n; ++k) {
            const R proj = mu0.inner(r[n], s.ch.base[k]) / s.ch.base.norms2[k];
            CHECK(d(real_abs(proj - s.l(n, k))) <= 1e-50);
        }
    const TruncationWindow w{10, 1, 2};
    CHECK(verify_UL(s.j, in.h, s.l, s.u, w).residual <= 1e-8);
    CHECK(verify_LU(s.jstar, s.l, s.u, w).residual <= 1e-8);
}

TEST_CASE("factorization identities on presets") {
    PrecisionScope scope(256);
    for (const char* name : {"laguerre-krall", "laguerre-krall-0.1", "laguerre-krall-10", "trivial", "laguerre-N2", "simple-roots"}) {
        const auto in = preset<R>(name);
        const std::size_t big_n = in.h.order();
        const std::size_t M = 20 + 2 * big_n;
        const TruncationWindow w{M, big_n, 2};
        const auto s = sections(in, M);
        const auto ul = verify_UL(s.j, in.h, s.l, s.u, w);
        const auto lu = verify_LU(s.jstar, s.l, s.u, w);
        CHECK(ul.window.valid() == 20);
        CHECK(ul.residual <= 1e-8);
        CHECK(lu.residual <= 1e-8);

        // Enlarging M leaves the valid block unchanged.
        const auto wide = sections(in, M + 8);
        CHECK(d(max_abs_diff(s.l, wide.l, w.valid())) <= 1e-12);
        CHECK(d(max_abs_diff(s.u, wide.u, w.valid())) <= 1e-12);
        CHECK(d(max_abs_diff(s.jstar, wide.jstar, w.valid())) <= 1e-12);
        CHECK(d(max_abs_diff(s.hj, wide.hj, w.valid())) <= 1e-12);
        const auto five = h_of_jacobi(s.j, in.h, M + 5);
        CHECK(d(max_abs_diff(s.hj, five, w.valid())) <= 1e-12);

        // (P*_n, P*_m)_0 vanishes for |n - m| > N.
        const auto mu0 = BilinearForm<R>::measure(pushforward_moments(in.mu, in.h, 100));
        for (std::size_t n = 0; n < 14; ++n)
            for (std::size_t m = n + big_n + 1; m < 14; ++m) {
                const R v = mu0.inner(s.ch.pstar[n], s.ch.pstar[m]);
                const R sc = real_sqrt(real_abs(mu0.inner(s.ch.pstar[n], s.ch.pstar[n]) * mu0.inner(s.ch.pstar[m], s.ch.pstar[m])));
                CHECK(d(real_abs(v) / sc) <= 1e-50);
            }
    }
}

TEST_CASE("Cholesky factor of J*") {
    PrecisionScope scope(256);
    for (const char* name : {"laguerre-krall", "laguerre-krall-0.1", "laguerre-krall-10", "trivial", "laguerre-N2"}) {
        const auto in = preset<R>(name);
        const std::size_t big_n = in.h.order();
        const std::size_t M = 20 + 2 * big_n;
        const TruncationWindow w{M, big_n, 2};
        const auto s = sections(in, M);
        const auto c = cholesky_C(s.ch.conn, s.ch.base.norms2, s.ch.pstar.norms2, M);
        const auto jo = jstar_orthonormal(s.ch.pstar, in.h, M);
        CHECK(verify_cholesky(jo, c, w).residual <= 1e-8);
        CHECK(cholesky_oracle(jo, c, w).residual <= 1e-8);
        CHECK(d(norm_identity_residual(s.ch.conn, s.ch.base.norms2, s.ch.pstar.norms2)) <= 1e-9);
        for (std::size_t n = 0; n + big_n < M; ++n) {
            const R diag = s.ch.base.norm(n + big_n) / (real_sqrt(s.ch.conn.A(n + big_n, n)) * s.ch.base.norm(n));
            CHECK(d(real_abs(c(n + big_n, n + big_n) - diag) / diag) <= 1e-9);
            CHECK(c(n, n) > R(0));
        }
    }
    // A signed mu_0 has no Cholesky form.
    const auto sr = preset<R>("simple-roots");
    const auto s = sections(sr, 24);
    CHECK_THROWS_AS(cholesky_C(s.ch.conn, s.ch.base.norms2, s.ch.pstar.norms2, 24), PositivityError);
}

TEST_CASE("factorizations on 50 random positive configurations, M = 24") {
    PrecisionScope scope(256);
    for (std::uint64_t seed = 1000; seed < 1050; ++seed) {
        const auto in = random_positive<R>(seed);
        const std::size_t big_n = in.h.order();
        const TruncationWindow w{24, big_n, 2};
        const auto s = sections(in, 24);
        CHECK(verify_UL(s.j, in.h, s.l, s.u, w).residual <= 1e-8 * verify_UL(s.j, in.h, s.l, s.u, w).scale);
        CHECK(verify_LU(s.jstar, s.l, s.u, w).residual <= 1e-8 * verify_LU(s.jstar, s.l, s.u, w).scale);
    }
}
