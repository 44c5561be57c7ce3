#include "mgt/cli.hpp"

#include "mgt/kernels.hpp"

#include <chrono>
#include <ctime>
#include <functional>

namespace mgt::cli {

namespace {

constexpr const char* kSchema = "geronimus-report/1";

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json header(const std::string& command, const RunConfig& cfg) {
    return json{{"schema", kSchema}, {"generated_at", timestamp()}, {"command", command}, {"config", cfg.to_json()}};
}

template <class Real>
std::string cell(const Real& x) {
    return format_double(to_double(x));
}

template <class Real>
json vec_json(const std::vector<Real>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_double(x));
    return a;
}

template <class Real>
json poly_json(const Polynomial<Real>& p) {
    return vec_json(p.coeffs());
}

template <class Real>
json matrix_json(const Matrix<Real>& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_double(m(i, j)));
        a.push_back(std::move(row));
    }
    return a;
}

json residual_json(const ResidualReport& r) {
    return json{{"name", r.name},
                {"residual", r.residual},
                {"scale", r.scale},
                {"window", {{"M", r.window.M}, {"N", r.window.N}, {"products", r.window.products}, {"valid", r.window.valid()}}}};
}

/// Base sequence of mu_0, connection data and P* for degrees 0..degree.
template <class Real>
struct Pipeline {
    Setup<Real> s;
    MonicOPS<Real> base;
    ConnectionCoeffs<Real> conn;
    MonicOPS<Real> pstar;
};

template <class Real>
MonicOPS<Real> base_ops(const Setup<Real>& s, std::size_t degree) {
    const std::size_t n = s.h.order();
    const std::size_t horizon = s.mu.horizon() >= n ? s.mu.horizon() - n : 0;
    return monic_ops_from_form(BilinearForm<Real>::measure(pushforward_moments(s.mu, s.h, horizon)), degree);
}

template <class Real>
Pipeline<Real> build_pipeline(const Setup<Real>& s, std::size_t base_degree, std::size_t degree) {
    auto base = base_ops(s, base_degree);
    auto conn = connection_coeffs(base, s.form, degree);
    auto ps = pstar_sequence(base, s.form, conn);
    return Pipeline<Real>{s, std::move(base), std::move(conn), std::move(ps)};
}

template <class Real>
json definiteness_json(const DefinitenessReport<Real>& rep) {
    json rows = json::array();
    for (const auto& r : rep.rows) {
        json row{{"n", r.n}, {"d_n", to_double(r.d_n)}, {"d_next", to_double(r.d_next)},
                 {"ratio", to_double(r.ratio)}, {"sign_ok", r.sign_ok}, {"nonzero", r.nonzero}};
        if (r.identity_lhs) row["identity_lhs"] = to_double(*r.identity_lhs);
        if (r.identity_rhs) row["identity_rhs"] = to_double(*r.identity_rhs);
        rows.push_back(std::move(row));
    }
    json out{{"verdict", to_string(rep.verdict)}, {"identity_residual", to_double(rep.identity_residual())},
             {"rows", std::move(rows)}};
    out["first_failure"] = rep.first_failure ? json(*rep.first_failure) : json(nullptr);
    return out;
}

// transform ---------------------------------------------------------------------------------

template <class Real>
Report transform(const RunConfig& cfg) {
    const auto s = Setup<Real>::build(cfg);
    const std::size_t nmax = cfg.nmax;
    Report r;
    r.body = header("transform", cfg);

    const auto base = base_ops(s, nmax + 1);
    const auto defin = definiteness(base, s.form, nmax);
    r.body["definiteness"] = definiteness_json(defin);

    const auto conn = connection_coeffs(base, s.form, nmax);
    const auto ps = pstar_sequence(base, s.form, conn);
    const auto gram = s.form.gram(nmax);
    const auto sob = BilinearForm<Real>::sobolev(s.mu, s.masses).gram(nmax);

    json t;
    t["N"] = s.h.order();
    t["nmax"] = nmax;
    t["h"] = poly_json(s.h.expanded());
    t["shat"] = matrix_json(s.params.shat);
    t["lambda"] = matrix_json(s.masses.lambda());
    t["dstar"] = vec_json(conn.dstar);
    json rows = json::array();
    for (const auto& row : conn.rows) rows.push_back(vec_json(row));
    t["connection"] = std::move(rows);
    json polys = json::array();
    for (const auto& p : ps.polys) polys.push_back(poly_json(p));
    t["pstar"] = std::move(polys);
    t["pstar_norms2"] = vec_json(ps.norms2);
    t["base_norms2"] = vec_json(base.norms2);
    t["orthogonality_residual"] = to_double(orthogonality_residual(ps));
    t["gram"] = {{"cholesky_ok", cholesky(gram).has_value()},
                 {"condition", condition_number(gram)},
                 {"sobolev_two_path_max_rel", to_double(max_abs_diff(gram, sob) / gram.max_abs())}};
    t["confluent_condition"] = condition_number(confluent_matrix(s.h));
    r.body["transform"] = std::move(t);

    CsvTable pst{"pstar", {"n", "k", "coeff"}, {}};
    for (std::size_t n = 0; n < ps.size(); ++n)
        for (std::size_t k = 0; k <= n; ++k) pst.rows.push_back({std::to_string(n), std::to_string(k), cell(ps[n].coeff(k))});
    CsvTable con{"connection", {"n", "m", "A"}, {}};
    for (std::size_t n = 0; n < conn.rows.size(); ++n)
        for (std::size_t k = 1; k <= conn.rows[n].size(); ++k)
            con.rows.push_back({std::to_string(n), std::to_string(n - k), cell(conn.rows[n][k - 1])});
    CsvTable deg{"degrees", {"n", "dstar", "ratio", "sign_ok", "pstar_norm2", "base_norm2"}, {}};
    for (std::size_t n = 0; n <= nmax; ++n)
        deg.rows.push_back({std::to_string(n), cell(conn.dstar[n]), cell(defin.rows[n].ratio),
                            defin.rows[n].sign_ok ? "1" : "0", cell(ps.norms2[n]), cell(base.norms2[n])});
    r.tables = {std::move(pst), std::move(con), std::move(deg)};
    return r;
}

// factorize ---------------------------------------------------------------------------------

template <class Real>
struct Sections {
    BandMatrix<Real> L, U, Jstar, hJ;
};

template <class Real>
Sections<Real> sections(const Pipeline<Real>& p, const JacobiMatrix<Real>& j, std::size_t M) {
    return {build_Lmon(p.conn, M), build_Umon(p.base, p.pstar, p.s.h, M), jstar_band(p.pstar, p.s.h, M),
            h_of_jacobi(j, p.s.h, M)};
}

template <class Real>
double leading_diff(const BandMatrix<Real>& a, const BandMatrix<Real>& b, std::size_t window) {
    return to_double(max_abs_diff(a, b, window));
}

template <class Real>
Report factorize(const RunConfig& cfg) {
    const auto s = Setup<Real>::build(cfg);
    const std::size_t big_n = s.h.order();
    const std::size_t M = cfg.truncation();
    const std::size_t extra = 8;
    const TruncationWindow w{M, big_n, 2};
    Report r;
    r.body = header("factorize", cfg);

    const auto p = build_pipeline(s, M + extra + big_n + 1, M + extra + big_n);
    const auto jac = jacobi(p.base);
    const auto sec = sections(p, jac, M);

    json f;
    f["window"] = {{"M", M}, {"N", big_n}, {"products", w.products}, {"valid", w.valid()}};
    f["L_mon"] = band_to_json(sec.L);
    f["U_mon"] = band_to_json(sec.U);
    f["Jstar_mon"] = band_to_json(sec.Jstar);
    f["h_of_J_mon"] = band_to_json(sec.hJ);
    f["residuals"] = json::array({residual_json(verify_UL(jac, s.h, sec.L, sec.U, w)),
                                  residual_json(verify_LU(sec.Jstar, sec.L, sec.U, w))});

    const auto defin = definiteness(p.base, s.form, M - 1);
    f["verdict"] = to_string(defin.verdict);
    try {
        const auto c = cholesky_C(p.conn, p.base.norms2, p.pstar.norms2, M);
        const auto jo = jstar_orthonormal(p.pstar, s.h, M);
        f["C"] = band_to_json(c);
        f["cholesky"] = {{"residual", residual_json(verify_cholesky(jo, c, w))},
                         {"oracle", residual_json(cholesky_oracle(jo, c, w))},
                         {"norm_identity_rel", to_double(norm_identity_residual(p.conn, p.base.norms2, p.pstar.norms2))}};
    } catch (const PositivityError& e) {
        f["cholesky"] = {{"skipped", e.what()}};
    }

    const auto hj_blocks = block_partition(sec.hJ, big_n);
    const auto js_blocks = block_partition(sec.Jstar, big_n);
    const auto hj_struct = block_structure(hj_blocks);
    const auto js_struct = block_structure(js_blocks);
    const auto lb = block_partition(sec.L, big_n);
    const auto ub = block_partition(sec.U, big_n);
    const auto lu_scalar = block_partition(kernels::multiply(sec.L, sec.U, kernels::Execution::parallel), big_n);
    const auto ul_scalar = block_partition(kernels::multiply(sec.U, sec.L, kernels::Execution::parallel), big_n);
    auto block_json = [](const BlockStructureReport& b) {
        return json{{"N", b.N}, {"blocks", b.blocks}, {"block_tridiagonal", b.block_tridiagonal},
                    {"outside_max", b.outside_max}, {"super_unitriangular_dev", b.super_unitriangular_dev}};
    };
    f["blocks"] = {{"h_of_J_mon", block_json(hj_struct)},
                   {"Jstar_mon", block_json(js_struct)},
                   {"LU_blockwise_vs_scalar", to_double(max_abs_diff(block_multiply(lb, ub).dense(), lu_scalar.dense()))},
                   {"UL_blockwise_vs_scalar", to_double(max_abs_diff(block_multiply(ub, lb).dense(), ul_scalar.dense()))}};

    const auto wide = sections(p, jac, M + extra);
    const std::size_t v = w.valid();
    const auto lu_m = kernels::multiply(sec.L, sec.U, kernels::Execution::parallel);
    const auto lu_w = kernels::multiply(wide.L, wide.U, kernels::Execution::parallel);
    const auto ul_m = kernels::multiply(sec.U, sec.L, kernels::Execution::parallel);
    const auto ul_w = kernels::multiply(wide.U, wide.L, kernels::Execution::parallel);
    f["truncation_stability"] = {{"rerun_M", M + extra},
                                 {"valid", v},
                                 {"L_mon", leading_diff(sec.L, wide.L, v)},
                                 {"U_mon", leading_diff(sec.U, wide.U, v)},
                                 {"Jstar_mon", leading_diff(sec.Jstar, wide.Jstar, v)},
                                 {"h_of_J_mon", leading_diff(sec.hJ, wide.hJ, v)},
                                 {"LU", leading_diff(lu_m, lu_w, v)},
                                 {"UL", leading_diff(ul_m, ul_w, v)}};
    r.body["factorize"] = std::move(f);

    auto band_table = [](std::string name, const BandMatrix<Real>& b) {
        CsvTable t{std::move(name), {"i", "j", "value"}, {}};
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = b.row_begin(i); j < b.row_end(i); ++j)
                t.rows.push_back({std::to_string(i), std::to_string(j), cell(b(i, j))});
        return t;
    };
    r.tables = {band_table("L_mon", sec.L), band_table("U_mon", sec.U), band_table("Jstar_mon", sec.Jstar),
                band_table("h_of_J_mon", sec.hJ)};
    return r;
}

// verify ------------------------------------------------------------------------------------

struct CheckList {
    json items = json::array();
    bool failed = false;

    void add(const std::string& module, const std::string& name, double value, double threshold, bool pass) {
        items.push_back({{"module", module}, {"check", name}, {"value", value}, {"threshold", threshold},
                         {"status", pass ? "pass" : "fail"}});
        failed = failed || !pass;
    }
    void below(const std::string& module, const std::string& name, double value, double threshold) {
        add(module, name, value, threshold, value <= threshold);
    }
    void skip(const std::string& module, const std::string& name, const std::string& why) {
        items.push_back({{"module", module}, {"check", name}, {"status", "skipped"}, {"reason", why}});
    }
    /// Runs body; a library error becomes a failed check carrying its message.
    void guarded(const std::string& module, const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const Error& e) {
            items.push_back({{"module", module}, {"check", name}, {"status", "fail"}, {"reason", e.what()}});
            failed = true;
        }
    }
};

template <class Real>
double rel(const Real& a, const Real& b) {
    const Real scale = std::max(real_abs(a), real_abs(b));
    return scale == Real(0) ? 0.0 : to_double(real_abs(a - b) / scale);
}

template <class Real>
Report verify(const RunConfig& cfg) {
    const auto s = Setup<Real>::build(cfg);
    const std::size_t big_n = s.h.order();
    const std::size_t nmax = cfg.nmax;
    const std::size_t n12 = std::min<std::size_t>(nmax, 12);
    const std::size_t M = cfg.truncation();
    const TruncationWindow w{M, big_n, 2};
    CheckList c;
    Report r;
    r.body = header("verify", cfg);

    const auto base = base_ops(s, std::max(nmax, M + 8) + big_n + 1);
    const auto defin = definiteness(base, s.form, nmax);
    const bool positive = defin.verdict == Definiteness::positive_definite;
    r.body["verdict"] = to_string(defin.verdict);

    std::optional<Pipeline<Real>> pipe;
    c.guarded("geronimus", "P* construction", [&] {
        auto conn = connection_coeffs(base, s.form, std::max(nmax, M + 8) + big_n);
        auto ps = pstar_sequence(base, s.form, conn);
        pipe.emplace(Pipeline<Real>{s, base, std::move(conn), std::move(ps)});
    });

    // poly
    c.guarded("poly", "h-basis reconstruction", [&] {
        Real worst(0);
        for (std::size_t n = 0; n <= nmax && pipe; ++n) {
            const auto& f = pipe->pstar[n];
            const auto back = h_basis_reconstruct(h_basis_decompose(f, s.h), s.h);
            worst = std::max(worst, relative_coeff_error(back, f) * f.max_abs_coeff() / (Real(1) + f.max_abs_coeff()));
        }
        c.below("poly", "h-basis reconstruction", to_double(worst), 1e-10);
    });
    c.guarded("poly", "jet consistency", [&] {
        const auto a = confluent_matrix(s.h);
        Real worst(0);
        for (std::size_t n = 0; n <= nmax && pipe; ++n) {
            const auto j1 = jet(pipe->pstar[n], s.h);
            const auto j2 = a * remainder_coeffs(pipe->pstar[n], s.h);
            Real scale(1);
            for (const auto& x : j1) scale = std::max(scale, real_abs(x));
            for (std::size_t i = 0; i < j1.size(); ++i) worst = std::max(worst, real_abs(j1[i] - j2[i]) / scale);
        }
        c.below("poly", "jet consistency", to_double(worst), 1e-10);
    });
    c.guarded("poly", "unfold identity", [&] {
        Real worst(0);
        for (std::size_t n = 0; n <= nmax && pipe; ++n) {
            const auto& f = pipe->pstar[n];
            std::vector<Polynomial<Real>> slices;
            for (std::size_t k = 0; k < big_n; ++k) slices.push_back(r_unfold(f, s.h, k));
            for (int i = 0; i < 50; ++i) {
                const Real t = Real(-1) + Real(4 * i) / Real(49);
                Real value(0);
                Real mag(1);
                for (std::size_t k = 0; k < big_n; ++k) value += real_pow(t, static_cast<unsigned>(k)) * slices[k](s.h.expanded()(t));
                for (std::size_t k = 0; k < f.size(); ++k) mag += real_abs(f.coeff(k)) * real_pow(real_abs(t), static_cast<unsigned>(k));
                worst = std::max(worst, real_abs(f(t) - value) / mag);
            }
        }
        c.below("poly", "unfold identity", to_double(worst), 1e-10);
    });
    {
        Real worst(0);
        for (const auto& node : s.h.nodes())
            for (unsigned j = 0; j < node.multiplicity; ++j) {
                const auto d = s.h.expanded().derivative(j);
                Real scale(1);
                for (std::size_t k = 0; k < d.size(); ++k)
                    scale += real_abs(d.coeff(k)) * real_pow(real_abs(node.root), static_cast<unsigned>(k));
                worst = std::max(worst, real_abs(d(node.root)) / scale);
            }
        c.below("poly", "derivatives of h vanish at its roots", to_double(worst), 1e-9);
    }

    // forms
    c.guarded("forms", "Gram symmetry", [&] {
        c.add("forms", "Gram symmetry", 0, 0, s.form.gram(nmax).exactly_symmetric());
    });
    c.guarded("forms", "multiplication symmetry", [&] {
        const auto mu0 = pushforward_moments(s.mu, s.h, s.mu.horizon() - big_n);
        Real worst(0);
        for (std::size_t i = 0; i <= n12; i += 3)
            for (std::size_t j = 0; j <= n12; j += 4) {
                const auto& f = base[i];
                const auto g = Polynomial<Real>::monomial(j) + Polynomial<Real>::constant(Real(1));
                const Real a = s.form.inner(s.h.expanded() * f, g);
                const Real b = s.form.inner(f, s.h.expanded() * g);
                const Real m = measure_inner(mu0, f, g);
                const Real scale = real_sqrt(real_abs(measure_inner(mu0, f, f) * measure_inner(mu0, g, g)));
                worst = std::max({worst, real_abs(a - b) / scale, real_abs(a - m) / scale});
            }
        c.below("forms", "multiplication symmetry", to_double(worst), 1e-10);
    });
    c.guarded("forms", "Geronimus vs Sobolev Gram", [&] {
        const auto g1 = s.form.gram(n12);
        const auto g2 = BilinearForm<Real>::sobolev(s.mu, shat_to_lambda(s.mu, s.params)).gram(n12);
        Real worst(0);
        for (std::size_t i = 0; i <= n12; ++i)
            for (std::size_t j = 0; j <= n12; ++j) worst = std::max(worst, Real(rel(g1(i, j), g2(i, j))));
        c.below("forms", "Geronimus vs Sobolev Gram", to_double(worst), 1e-9);
    });
    c.guarded("forms", "free block round trip", [&] {
        const auto back = lambda_to_shat(s.mu, s.h, s.masses.lambda());
        c.below("forms", "free block round trip",
                to_double(max_abs_diff(back.shat, s.params.shat) / s.params.shat.max_abs()), 1e-10);
    });

    // orthopoly
    c.guarded("orthopoly", "orthogonality of the mu_0 sequence", [&] {
        MonicOPS<Real> head{{base.polys.begin(), base.polys.begin() + static_cast<long>(nmax + 1)},
                            {base.norms2.begin(), base.norms2.begin() + static_cast<long>(nmax + 1)},
                            base.form};
        c.below("orthopoly", "orthogonality of the mu_0 sequence", to_double(orthogonality_residual(head)), 1e-8);
    });
    c.guarded("orthopoly", "recurrence reconstruction", [&] {
        const auto j = jacobi(base);
        const auto rec = recurrence_polys(j, nmax);
        Real worst(0);
        for (std::size_t n = 0; n <= nmax; ++n) worst = std::max(worst, relative_coeff_error(rec[n], base[n]));
        c.below("orthopoly", "recurrence reconstruction", to_double(worst), 1e-9);
    });
    c.guarded("orthopoly", "Christoffel-Darboux vs kernel sum", [&] {
        Real worst(0);
        const Real xs[] = {Real(3) / Real(10), Real(17) / Real(10), Real(41) / Real(10)};
        const Real ys[] = {Real(22) / Real(10), Real(9) / Real(10), Real(-1) / Real(2)};
        for (std::size_t n = 0; n <= n12; ++n)
            for (int i = 0; i < 3; ++i)
                worst = std::max(worst, Real(rel(kernel(base, n, xs[i], ys[i]), christoffel_darboux(base, n, xs[i], ys[i]))));
        c.below("orthopoly", "Christoffel-Darboux vs kernel sum", to_double(worst), 1e-9);
    });

    // geronimus
    if (pipe) {
        const auto& ps = pipe->pstar;
        MonicOPS<Real> head{{ps.polys.begin(), ps.polys.begin() + static_cast<long>(n12 + 1)},
                            {ps.norms2.begin(), ps.norms2.begin() + static_cast<long>(n12 + 1)},
                            ps.form};
        c.below("geronimus", "orthogonality of P*", to_double(orthogonality_residual(head)), 1e-8);
        c.guarded("geronimus", "three-path agreement", [&] {
            const auto gs = gs_oracle(s.form, n12);
            Real worst(0);
            for (std::size_t n = 0; n <= n12; ++n) {
                worst = std::max(worst, relative_coeff_error(pstar_determinant(base, s.form, n), ps[n]));
                worst = std::max(worst, relative_coeff_error(gs[n], ps[n]));
            }
            c.below("geronimus", "three-path agreement", to_double(worst), 1e-7);
        });
        c.below("geronimus", "norm identity",
                to_double(norm_identity_residual(pipe->conn, base.norms2, ps.norms2)), 1e-9);
        c.below("geronimus", "sign identity", to_double(defin.identity_residual()), 1e-7);
        c.guarded("geronimus", "existence system", [&] {
            const auto rmu = monic_ops_from_form(BilinearForm<Real>::measure(s.mu), nmax + big_n + 1);
            Real worst(0);
            for (std::size_t n = 0; n <= n12; ++n) {
                const auto ex = existence_system(rmu, s.masses, n);
                if (!ex.solvable) {
                    worst = Real(1);
                    break;
                }
                const auto jt = jet(ps[n], s.h);
                for (std::size_t i = 0; i < jt.size(); ++i)
                    worst = std::max(worst, real_abs(jt[i] - ex.jets[i]) / (Real(1) + real_abs(jt[i])));
            }
            c.below("geronimus", "existence system", to_double(worst), 1e-7);
            Real below(0), lead(0), orth(0);
            for (std::size_t n = 0; n <= std::min<std::size_t>(nmax, 10); ++n) {
                const auto rc = connect_to_R(rmu, ps, s.h, n);
                below = std::max(below, rc.below_residual);
                lead = std::max(lead, real_abs(rc.leading - Real(1)));
                orth = std::max(orth, rc.rel_residual);
            }
            c.below("geronimus", "R-expansion vanishes below n-N", to_double(below), 1e-8);
            c.below("geronimus", "R-expansion leading coefficient", to_double(lead), 1e-8);
            c.below("geronimus", "(P*_{n+N}, R_k)_0 vanishes for k < n", to_double(orth), 1e-8);
        });
    }
    c.guarded("geronimus", "sign pattern vs Gram Cholesky", [&] {
        const bool chol = cholesky(s.form.gram(nmax)).has_value();
        c.add("geronimus", "sign pattern vs Gram Cholesky", chol ? 1 : 0, positive ? 1 : 0, chol == positive);
    });

    // factor
    if (pipe) {
        c.guarded("factor", "Darboux factorizations", [&] {
            const auto jac = jacobi(base);
            const auto sec = sections(*pipe, jac, M);
            c.below("factor", "h(J_mon) - U_mon L_mon", verify_UL(jac, s.h, sec.L, sec.U, w).residual, 1e-8);
            c.below("factor", "J*_mon - L_mon U_mon", verify_LU(sec.Jstar, sec.L, sec.U, w).residual, 1e-8);
            const auto full = jstar_full(pipe->pstar, s.h, M);
            Real outside(0), scale(0);
            for (std::size_t i = 0; i < M; ++i)
                for (std::size_t j = 0; j < M; ++j) {
                    scale = std::max(scale, real_abs(full(i, j)));
                    if (i > j + big_n || j > i + big_n) outside = std::max(outside, real_abs(full(i, j)));
                }
            c.below("factor", "J*_mon band", to_double(outside / scale), 1e-9);
            const auto wide = sections(*pipe, jac, M + 8);
            const double drift = std::max({leading_diff(sec.L, wide.L, w.valid()), leading_diff(sec.U, wide.U, w.valid()),
                                           leading_diff(sec.Jstar, wide.Jstar, w.valid()),
                                           leading_diff(sec.hJ, wide.hJ, w.valid())});
            c.below("factor", "truncation stability", drift, 1e-12);

            const auto bs = block_structure(block_partition(sec.hJ, big_n));
            c.add("blockview", "h(J_mon) block tridiagonal", bs.outside_max, 0, bs.block_tridiagonal);
            c.below("blockview", "superdiagonal blocks lower unitriangular", bs.super_unitriangular_dev, 1e-9);
            const auto lb = block_partition(sec.L, big_n);
            const auto ub = block_partition(sec.U, big_n);
            const auto scalar = block_partition(kernels::multiply(sec.L, sec.U, kernels::Execution::parallel), big_n);
            c.below("blockview", "blockwise L_mon U_mon",
                    to_double(max_abs_diff(block_multiply(lb, ub).dense(), scalar.dense())), 1e-10);

            if (!positive) {
                c.skip("factor", "Cholesky J* = C C^T", std::string("verdict ") + to_string(defin.verdict));
                return;
            }
            try {
                const auto cm = cholesky_C(pipe->conn, base.norms2, pipe->pstar.norms2, M);
                const auto jo = jstar_orthonormal(pipe->pstar, s.h, M);
                c.below("factor", "Cholesky J* = C C^T", verify_cholesky(jo, cm, w).residual, 1e-8);
                c.below("factor", "C vs dense Cholesky", cholesky_oracle(jo, cm, w).residual, 1e-8);
            } catch (const PositivityError& e) {
                c.skip("factor", "Cholesky J* = C C^T", e.what());
            }
        });
        c.guarded("blockview", "matrix Gram block diagonal", [&] {
            const std::size_t blocks = std::min<std::size_t>(5, (pipe->pstar.size()) / big_n);
            const auto mm = matrix_moments_pushforward(s.mu, s.h, &s.masses, 2 * (blocks - 1));
            const auto bg = block_gram(pipe->pstar.polys, s.h, mm, blocks);
            c.below("blockview", "matrix Gram block diagonal", bg.offdiag_residual, 1e-7);
            if (positive) c.add("blockview", "diagonal blocks positive definite", 0, 0, bg.diagonal_blocks_spd);
        });
    }

    r.body["checks"] = std::move(c.items);
    r.body["passed"] = !c.failed;
    r.exit_code = c.failed ? 3 : 0;
    CsvTable t{"checks", {"module", "check", "status", "value", "threshold"}, {}};
    for (const auto& item : r.body["checks"])
        t.rows.push_back({item["module"], item["check"], item["status"],
                          item.contains("value") ? format_double(item["value"].get<double>()) : "",
                          item.contains("threshold") ? format_double(item["threshold"].get<double>()) : ""});
    r.tables = {std::move(t)};
    return r;
}

}  // namespace

Report cmd_transform(const RunConfig& cfg) {
    if (cfg.precision.native) return transform<double>(cfg);
    PrecisionScope scope(cfg.precision.bits);
    return transform<HpReal>(cfg);
}

Report cmd_factorize(const RunConfig& cfg) {
    if (cfg.precision.native) return factorize<double>(cfg);
    PrecisionScope scope(cfg.precision.bits);
    return factorize<HpReal>(cfg);
}

Report cmd_verify(const RunConfig& cfg) {
    if (cfg.precision.native) return verify<double>(cfg);
    PrecisionScope scope(cfg.precision.bits);
    return verify<HpReal>(cfg);
}

}  // namespace mgt::cli
