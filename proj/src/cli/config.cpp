#include "mgt/cli.hpp"

#include <charconv>

namespace mgt::cli {

Precision Precision::parse(const std::string& text) {
    if (text == "f64") return {true, 53};
    if (text.size() > 2 && text.compare(0, 2, "hp") == 0) {
        unsigned bits = 0;
        const char* first = text.data() + 2;
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, bits);
        if (ec == std::errc() && ptr == last && bits >= 64 && bits <= 8192) return {false, bits};
    }
    throw ValidationError("precision must be f64 or hp<bits> with 64 <= bits <= 8192, got '" + text + "'");
}

std::string Precision::name() const {
    return native ? "f64" : "hp" + std::to_string(bits);
}

namespace {

std::size_t parse_count(const json& j, const char* key) {
    if (j.is_number_unsigned()) return j.get<std::size_t>();
    if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::size_t>(j.get<long long>());
    throw ValidationError(std::string("'") + key + "' must be a nonnegative integer");
}

void require_number(const json& j, const std::string& where) {
    if (!j.is_number() && !j.is_string()) throw ValidationError(where + " must be a number or numeric string");
}

void require_square(const json& m, std::size_t n, const std::string& where) {
    if (!m.is_array() || m.size() != n) throw ValidationError(where + " must be an " + std::to_string(n) + " x " + std::to_string(n) + " array");
    for (const auto& row : m) {
        if (!row.is_array() || row.size() != n)
            throw ValidationError(where + " must be an " + std::to_string(n) + " x " + std::to_string(n) + " array");
        for (const auto& x : row) require_number(x, where + " entry");
    }
}

}  // namespace

std::size_t RunConfig::order() const {
    std::size_t n = 0;
    if (!h.is_array()) return 0;
    for (const auto& node : h)
        if (node.is_array() && node.size() == 2 && node[1].is_number_integer() && node[1].get<long long>() > 0)
            n += static_cast<std::size_t>(node[1].get<long long>());
    return n;
}

void RunConfig::validate() const {
    if (!measure.is_object() || measure.size() != 1)
        throw ValidationError("'measure' must be an object with exactly one of laguerre, explicit, quadrature");
    if (measure.contains("laguerre")) {
        const auto& l = measure["laguerre"];
        if (!l.is_object() || !l.contains("alpha")) throw ValidationError("'measure.laguerre' needs 'alpha'");
        require_number(l["alpha"], "'measure.laguerre.alpha'");
    } else if (measure.contains("explicit")) {
        const auto& e = measure["explicit"];
        if (!e.is_array() || e.empty()) throw ValidationError("'measure.explicit' must be a nonempty moment list");
        for (const auto& x : e) require_number(x, "'measure.explicit' entry");
    } else if (measure.contains("quadrature")) {
        const auto& q = measure["quadrature"];
        if (!q.is_object() || !q.contains("nodes") || !q.contains("weights") || !q["nodes"].is_array() ||
            !q["weights"].is_array() || q["nodes"].size() != q["weights"].size() || q["nodes"].empty())
            throw ValidationError("'measure.quadrature' needs equally long nonempty 'nodes' and 'weights'");
        for (const auto& x : q["nodes"]) require_number(x, "quadrature node");
        for (const auto& x : q["weights"]) require_number(x, "quadrature weight");
    } else {
        throw ValidationError("unknown measure kind '" + measure.begin().key() + "'");
    }

    if (!h.is_array() || h.empty()) throw ValidationError("'h' must be a nonempty list of [root, multiplicity] pairs");
    for (const auto& node : h) {
        if (!node.is_array() || node.size() != 2) throw ValidationError("each 'h' entry must be [root, multiplicity]");
        require_number(node[0], "'h' root");
        if (!node[1].is_number_integer() || node[1].get<long long>() < 1)
            throw ValidationError("'h' multiplicities must be positive integers");
    }
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (h[i][0] == h[j][0]) throw ValidationError("'h' lists root " + h[i][0].dump() + " more than once");

    if (shat.has_value() == lambda.has_value()) throw ValidationError("give exactly one of 'shat' and 'lambda'");
    const std::size_t n = order();
    if (shat) require_square(*shat, n, "'shat'");
    if (lambda) require_square(*lambda, n, "'lambda'");
    if (nmax < 1) throw ValidationError("'nmax' must be at least 1");
    if (truncation() < nmax + 2 * n)
        throw ValidationError("'trunc' must be at least nmax + 2N = " + std::to_string(nmax + 2 * n));
}

json RunConfig::to_json() const {
    json j;
    j["measure"] = measure;
    j["h"] = h;
    if (shat) j["shat"] = *shat;
    if (lambda) j["lambda"] = *lambda;
    j["nmax"] = nmax;
    j["trunc"] = truncation();
    j["precision"] = precision.name();
    j["out"] = out;
    j["format"] = format == OutputFormat::json ? "json" : format == OutputFormat::csv ? "csv" : "both";
    if (horizon) j["horizon"] = horizon;
    return j;
}

RunConfig RunConfig::from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    static const char* known[] = {"measure", "h", "shat", "lambda", "nmax", "trunc", "precision", "out", "format", "horizon"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return it.key() == k; }) ==
            std::end(known))
            throw ValidationError("unknown config key '" + it.key() + "'");
    RunConfig c;
    if (!j.contains("measure")) throw ValidationError("config needs 'measure'");
    if (!j.contains("h")) throw ValidationError("config needs 'h'");
    c.measure = j["measure"];
    c.h = j["h"];
    if (j.contains("shat")) c.shat = j["shat"];
    if (j.contains("lambda")) c.lambda = j["lambda"];
    if (j.contains("nmax")) c.nmax = parse_count(j["nmax"], "nmax");
    if (j.contains("trunc")) c.trunc = parse_count(j["trunc"], "trunc");
    if (j.contains("horizon")) c.horizon = parse_count(j["horizon"], "horizon");
    if (j.contains("precision")) {
        if (!j["precision"].is_string()) throw ValidationError("'precision' must be a string");
        c.precision = Precision::parse(j["precision"].get<std::string>());
    }
    if (j.contains("out")) {
        if (!j["out"].is_string()) throw ValidationError("'out' must be a string");
        c.out = j["out"].get<std::string>();
    }
    if (j.contains("format")) {
        const auto f = j["format"].is_string() ? j["format"].get<std::string>() : std::string();
        if (f == "json") c.format = OutputFormat::json;
        else if (f == "csv") c.format = OutputFormat::csv;
        else if (f == "both") c.format = OutputFormat::both;
        else throw ValidationError("'format' must be json, csv or both");
    }
    return c;
}

const std::vector<PresetInfo>& presets() {
    static const std::vector<PresetInfo> all = [] {
        auto krall = [](const char* mass) {
            return json{{"measure", {{"laguerre", {{"alpha", 0}}}}},
                        {"h", json::array({json::array({0, 1})})},
                        {"lambda", json::array({json::array({json::parse(mass)})})}};
        };
        std::vector<PresetInfo> v;
        v.push_back({"laguerre-krall", "Laguerre alpha=0, h=t, point mass 1 at the origin", krall("1")});
        v.push_back({"laguerre-krall-0.1", "Laguerre alpha=0, h=t, point mass 0.1 at the origin", krall("\"0.1\"")});
        v.push_back({"laguerre-krall-10", "Laguerre alpha=0, h=t, point mass 10 at the origin", krall("10")});
        v.push_back({"trivial", "Laguerre alpha=0, h=t, free block equal to the moment block (S = 0)", krall("0")});
        v.push_back({"laguerre-N2", "Laguerre alpha=1, h=t^2, masses 1 on f(0)g(0) and f'(0)g'(0)",
                     json{{"measure", {{"laguerre", {{"alpha", 1}}}}},
                          {"h", json::array({json::array({0, 2})})},
                          {"lambda", json::array({json::array({1, 0}), json::array({0, 1})})}}});
        v.push_back({"simple-roots", "Laguerre alpha=0, h=t(t-1), fixed positive definite mass matrix",
                     json{{"measure", {{"laguerre", {{"alpha", 0}}}}},
                          {"h", json::array({json::array({0, 1}), json::array({1, 1})})},
                          {"lambda", json::array({json::array({2, "0.5"}), json::array({"0.5", 1})})}}});
        v.push_back({"indefinite", "Laguerre alpha=0, h=t, free block [[-10]]: quasi-definite, not positive",
                     json{{"measure", {{"laguerre", {{"alpha", 0}}}}},
                          {"h", json::array({json::array({0, 1})})},
                          {"shat", json::array({json::array({-10})})}}});
        return v;
    }();
    return all;
}

RunConfig preset_config(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return RunConfig::from_json(p.config);
    std::string names;
    for (const auto& p : presets()) names += (names.empty() ? "" : ", ") + p.name;
    throw ValidationError("unknown preset '" + name + "' (available: " + names + ")");
}

template <class Real>
Real parse_real(const json& j) {
    std::string text;
    if (j.is_string()) text = j.get<std::string>();
    else if (j.is_number()) text = j.dump();
    else throw ValidationError("expected a number, got " + j.dump());
    if constexpr (is_native_v<Real>) {
        Real v{};
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) throw ValidationError("not a number: '" + text + "'");
        return v;
    } else {
        try {
            return Real(text);
        } catch (const std::exception&) {
            throw ValidationError("not a number: '" + text + "'");
        }
    }
}

namespace {

template <class Real>
Matrix<Real> parse_matrix(const json& m) {
    Matrix<Real> out(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = parse_real<Real>(m[i][j]);
    return out;
}

std::size_t derived_horizon(const RunConfig& cfg) {
    const std::size_t n = cfg.order();
    const std::size_t top = std::max(cfg.nmax, cfg.truncation() + 8) + 2 * n + 2;
    return std::max<std::size_t>(MomentFunctional<double>::kDefaultHorizon, 2 * top + n);
}

template <class Real>
MomentFunctional<Real> build_measure(const RunConfig& cfg) {
    const std::size_t horizon = cfg.horizon ? cfg.horizon : derived_horizon(cfg);
    if (cfg.measure.contains("laguerre"))
        return MomentFunctional<Real>::laguerre(parse_real<Real>(cfg.measure["laguerre"]["alpha"]), horizon);
    if (cfg.measure.contains("explicit")) {
        std::vector<Real> m;
        for (const auto& x : cfg.measure["explicit"]) m.push_back(parse_real<Real>(x));
        return MomentFunctional<Real>::from_moments(std::move(m));
    }
    std::vector<Real> nodes;
    std::vector<Real> weights;
    for (const auto& x : cfg.measure["quadrature"]["nodes"]) nodes.push_back(parse_real<Real>(x));
    for (const auto& x : cfg.measure["quadrature"]["weights"]) weights.push_back(parse_real<Real>(x));
    return MomentFunctional<Real>::quadrature(std::move(nodes), std::move(weights), horizon);
}

template <class Real>
SobolevMass<Real> masses_for(const MomentFunctional<Real>& mu, const FactoredNodes<Real>& h, const RunConfig& cfg,
                             const GeronimusParams<Real>& params) {
    if (cfg.lambda) return SobolevMass<Real>(h, parse_matrix<Real>(*cfg.lambda));
    return shat_to_lambda(mu, params);
}

template <class Real>
GeronimusParams<Real> params_for(const MomentFunctional<Real>& mu, const FactoredNodes<Real>& h, const RunConfig& cfg) {
    if (cfg.shat) return GeronimusParams<Real>(h, parse_matrix<Real>(*cfg.shat));
    const auto lam = parse_matrix<Real>(*cfg.lambda);
    if (!lam.exactly_symmetric()) throw ValidationError("'lambda' is not symmetric");
    return lambda_to_shat(mu, h, lam);
}

}  // namespace

template <class Real>
Setup<Real> Setup<Real>::build(const RunConfig& cfg) {
    cfg.validate();
    auto mu = build_measure<Real>(cfg);
    std::vector<Node<Real>> nodes;
    for (const auto& node : cfg.h)
        nodes.push_back({parse_real<Real>(node[0]), static_cast<unsigned>(node[1].get<long long>())});
    FactoredNodes<Real> h(std::move(nodes));
    auto params = params_for(mu, h, cfg);
    auto masses = masses_for(mu, h, cfg, params);
    auto form = BilinearForm<Real>::geronimus(mu, params);
    return Setup{std::move(mu), std::move(h), std::move(params), std::move(masses), std::move(form)};
}

template double parse_real<double>(const json&);
template HpReal parse_real<HpReal>(const json&);
template struct Setup<double>;
template struct Setup<HpReal>;

}  // namespace mgt::cli
