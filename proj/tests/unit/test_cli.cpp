#include "../support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace mgt;
using namespace mgt::cli;

namespace {

json strip_time(json j) {
    j.erase("generated_at");
    return j;
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("mgt-cli-test-" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("precision parsing") {
    CHECK(Precision::parse("f64").native);
    const auto p = Precision::parse("hp512");
    CHECK_FALSE(p.native);
    CHECK(p.bits == 512);
    CHECK(p.name() == "hp512");
    for (const char* bad : {"hp", "hp12", "f32", "hp99999", "hp256x"}) CHECK_THROWS_AS(Precision::parse(bad), ValidationError);
}

TEST_CASE("configuration validation") {
    auto cfg = preset_config("laguerre-krall");
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.truncation() == 22);
    CHECK(RunConfig::from_json(cfg.to_json()).to_json() == cfg.to_json());

    auto j = cfg.to_json();
    j["h"] = json::array({json::array({0, 1}), json::array({0, 1})});
    CHECK_THROWS_AS(RunConfig::from_json(j).validate(), ValidationError);

    j = cfg.to_json();
    j["bogus"] = 1;
    CHECK_THROWS_AS(RunConfig::from_json(j), ValidationError);

    j = cfg.to_json();
    j["shat"] = json::array({json::array({1})});
    CHECK_THROWS_AS(RunConfig::from_json(j).validate(), ValidationError);  // both shat and lambda

    auto n2 = preset_config("laguerre-N2").to_json();
    n2.erase("lambda");
    n2["shat"] = json::array({json::array({3, 1}), json::array({2, 7})});
    CHECK_THROWS_AS(Setup<double>::build(RunConfig::from_json(n2)), ValidationError);

    cfg.trunc = cfg.nmax + 1;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    CHECK_THROWS_AS(preset_config("no-such-preset"), ValidationError);
}

TEST_CASE("transform on the trivial preset reproduces monic Laguerre(0)") {
    PrecisionScope scope(256);
    const auto cfg = preset_config("trivial");
    const auto rep = cmd_transform(cfg);
    CHECK(rep.body["schema"] == "geronimus-report/1");
    const auto& polys = rep.body["transform"]["pstar"];
    REQUIRE(polys.size() == cfg.nmax + 1);
    for (std::size_t n = 0; n <= cfg.nmax; ++n) {
        const auto ref = testing::monic_laguerre(n, HpReal(0));
        for (std::size_t k = 0; k <= n; ++k) {
            const double got = polys[n][k].get<double>();
            const double want = to_double(ref.coeff(k));
            CHECK(std::abs(got - want) <= 1e-9 * std::abs(want));
        }
    }
    CHECK(rep.body["definiteness"]["verdict"] == "positive_definite");
}

TEST_CASE("transform on Laguerre-Krall") {
    PrecisionScope scope(256);
    const auto rep = cmd_transform(preset_config("laguerre-krall"));
    CHECK(rep.body["transform"]["orthogonality_residual"].get<double>() <= 1e-8);
    const auto& rows = rep.body["definiteness"]["rows"];
    for (std::size_t n = 2; n < rows.size(); ++n)
        CHECK(std::abs(rows[n]["ratio"].get<double>()) > std::abs(rows[n - 1]["ratio"].get<double>()));
}

TEST_CASE("reports are deterministic apart from the timestamp") {
    const auto cfg = preset_config("laguerre-N2");
    for (auto cmd : {cmd_transform, cmd_factorize, cmd_verify}) {
        const auto a = cmd(cfg);
        const auto b = cmd(cfg);
        CHECK(strip_time(a.body).dump() == strip_time(b.body).dump());
    }
}

TEST_CASE("factorize reports") {
    const auto rep = cmd_factorize(preset_config("laguerre-krall"));
    const auto& f = rep.body["factorize"];
    CHECK(f["window"]["valid"] == 20);
    for (const auto& r : f["residuals"]) CHECK(r["residual"].get<double>() <= 1e-8);
    CHECK(f["cholesky"]["residual"]["residual"].get<double>() <= 1e-8);
    for (const char* key : {"L_mon", "U_mon", "Jstar_mon", "h_of_J_mon"})
        CHECK(f["truncation_stability"][key].get<double>() <= 1e-12);
    CHECK(f["L_mon"]["lower"] == 1);
    CHECK(f["L_mon"]["diagonals"].size() == 2);

    const auto n2 = cmd_factorize(preset_config("laguerre-N2"));
    CHECK(n2.body["factorize"]["blocks"]["h_of_J_mon"]["block_tridiagonal"] == true);
    CHECK(n2.body["factorize"]["blocks"]["h_of_J_mon"]["super_unitriangular_dev"].get<double>() <= 1e-9);
}

TEST_CASE("verify: presets pass, the indefinite preset is recorded") {
    for (const auto& p : presets()) {
        CAPTURE(p.name);
        const auto rep = cmd_verify(preset_config(p.name));
        CHECK(rep.exit_code == 0);
        if (p.name == "indefinite") CHECK(rep.body["verdict"] == "indefinite");
        else CHECK(rep.body["verdict"] == "positive_definite");
    }
}

TEST_CASE("write_report emits JSON and round-trip CSV") {
    auto cfg = preset_config("laguerre-krall");
    cfg.out = scratch("write").string();
    const auto rep = cmd_transform(cfg);
    const auto files = write_report(rep, "transform", cfg);
    CHECK(files.size() == 1 + rep.tables.size());
    std::ifstream js(std::filesystem::path(cfg.out) / "transform.json");
    const auto parsed = json::parse(js);
    CHECK(strip_time(parsed) == strip_time(rep.body));
    std::ifstream csv(std::filesystem::path(cfg.out) / "transform_pstar.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "n,k,coeff");
    CHECK(format_double(0.1) == "0.1");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);

    cfg.format = OutputFormat::json;
    cfg.out = scratch("json-only").string();
    CHECK(write_report(rep, "transform", cfg).size() == 1);
}
